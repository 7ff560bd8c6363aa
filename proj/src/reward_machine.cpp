#include "lpt/reward_machine.hpp"

#include <iomanip>
#include <sstream>

namespace lpt {

RMState RMState::init(const Formula& f) { return RMState(Engine(f)); }

RMState RMState::step(const LabelSet& labels) const {
  if (engine_.finalized()) {
    throw AlreadyFinalized("terminal reward-machine state has no successors");
  }
  Engine next = engine_;
  next.step(labels);
  return RMState(std::move(next));
}

RMState RMState::finalize() const {
  Engine next = engine_;
  next.finalize();
  return RMState(std::move(next));
}

std::string RMState::digest_payload(DigestKind kind) const {
  nlohmann::json j;
  if (kind == DigestKind::Signature) {
    j["signature"] = signature_json(signature());
  } else {
    j["time"] = engine_.started() ? nlohmann::json(engine_.current_time())
                                  : nlohmann::json(nullptr);
    j["vectors"] = engine_.vectors();
  }
  // nlohmann objects keep keys sorted; dump() emits no whitespace.
  return j.dump();
}

std::string RMState::digest(DigestKind kind) const { return digest_hex(digest_payload(kind)); }

bool RMState::operator==(const RMState& other) const {
  if (engine_.started() != other.engine_.started()) return false;
  if (engine_.started() && engine_.current_time() != other.engine_.current_time()) return false;
  return engine_.vectors() == other.engine_.vectors();
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 14695981039346656037ull;  // FNV-1a 64-bit offset basis
  for (const char c : bytes) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 1099511628211ull;
  }
  return hash;
}

std::string digest_hex(std::string_view bytes) {
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << fnv1a64(bytes);
  return out.str();
}

RewardPolicy RewardPolicy::goal_state(std::string target_digest, double base, DigestKind kind) {
  return RewardPolicy{GoalStatePolicy{std::move(target_digest), kind}, base};
}

RewardPolicy RewardPolicy::novelty(const std::set<std::string>& seen, double base,
                                   DigestKind kind) {
  return RewardPolicy{NoveltyPolicy{&seen, kind}, base};
}

RewardPolicy RewardPolicy::custom(std::function<double(const RMState&)> hook) {
  return RewardPolicy{CustomPolicy{std::move(hook)}, 0.0};
}

double reward(const RMState& u_next, const RewardPolicy& policy, double base_override) {
  if (base_override < 0.0) throw Error("reward base must be non-negative");

  if (const auto* goal = std::get_if<GoalStatePolicy>(&policy.rule)) {
    return u_next.digest(goal->digest_kind) == goal->target_digest ? base_override : 0.0;
  }
  if (const auto* novelty = std::get_if<NoveltyPolicy>(&policy.rule)) {
    if (novelty->seen == nullptr) return base_override;
    const bool fresh = novelty->seen->count(u_next.digest(novelty->digest_kind)) == 0;
    return fresh ? base_override : 0.0;
  }
  return std::get<CustomPolicy>(policy.rule).hook(u_next);
}

double reward(const RMState& u_next, const RewardPolicy& policy) {
  return reward(u_next, policy, policy.base_reward);
}

}  // namespace lpt
