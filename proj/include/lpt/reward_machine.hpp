#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <string_view>
#include <variant>

#include "lpt/signature.hpp"
#include "lpt/tracking.hpp"

namespace lpt {

/// Which canonical serialization a state digest hashes.
///
///   Signature : the run-length-merged per-node vectors; timing-erased, so
///               two rollouts with the same behavior share a digest.
///   State     : all raw vectors plus the current time; timing-sensitive.
///
/// Signature is the default, matching the behavioral reading of goal and
/// novelty rewards.
enum class DigestKind : std::uint8_t { Signature, State };

/// Reward-machine internal state u = (tracking vectors, t'). Immutable
/// snapshot semantics: step() returns the successor and leaves *this alone,
/// making the machine's transition function pure. Two states compare equal
/// iff their vectors and current time are equal.
class RMState {
 public:
  /// u0 for a specification: built tree, no steps yet.
  static RMState init(const Formula& f);

  /// delta_u: the engine step applied to a copy. Inputs are exactly the
  /// previous state and the new label set. Throws AlreadyFinalized on
  /// terminal states.
  RMState step(const LabelSet& labels) const;

  /// Terminal evaluation applied to a copy. Finalized states are terminal:
  /// step() refuses them.
  RMState finalize() const;

  bool is_terminal() const { return engine_.finalized(); }

  const Engine& engine() const { return engine_; }
  Signature signature() const { return make_signature(engine_); }

  /// Lowercase-hex FNV-1a 64 hash of the canonical serialization (see
  /// digest_payload).
  std::string digest(DigestKind kind = DigestKind::Signature) const;

  /// The exact string that gets hashed: canonical JSON, sorted keys, no
  /// whitespace. Signature: {"signature":[[...],...]}.
  /// State: {"time":t',"vectors":[[...],...]} with time null pre-step.
  std::string digest_payload(DigestKind kind) const;

  bool operator==(const RMState& other) const;
  bool operator!=(const RMState& other) const { return !(*this == other); }

 private:
  explicit RMState(Engine engine) : engine_(std::move(engine)) {}

  Engine engine_;
};

/// 64-bit FNV-1a; the stable hash behind digests.
std::uint64_t fnv1a64(std::string_view bytes);

/// fnv1a64 rendered as 16 lowercase hex characters.
std::string digest_hex(std::string_view bytes);

struct GoalStatePolicy {
  std::string target_digest;
  DigestKind digest_kind = DigestKind::Signature;
};

/// The `seen` set stays caller-owned: reward() only reads it, the caller
/// inserts digests when it decides to.
struct NoveltyPolicy {
  const std::set<std::string>* seen = nullptr;
  DigestKind digest_kind = DigestKind::Signature;
};

struct CustomPolicy {
  std::function<double(const RMState&)> hook;
};

/// delta_r selector. base_reward stands in for the environment reward
/// R(s,a) handed over by the caller; it must be >= 0.
struct RewardPolicy {
  std::variant<GoalStatePolicy, NoveltyPolicy, CustomPolicy> rule;
  double base_reward = 1.0;

  static RewardPolicy goal_state(std::string target_digest, double base = 1.0,
                                 DigestKind kind = DigestKind::Signature);
  static RewardPolicy novelty(const std::set<std::string>& seen, double base = 1.0,
                              DigestKind kind = DigestKind::Signature);
  static RewardPolicy custom(std::function<double(const RMState&)> hook);
};

/// Reward for arriving in u_next.
///   GoalState: base when digest(u_next) matches the target, else 0.
///   Novelty:   base when digest(u_next) is not in `seen`, else 0.
///   Custom:    hook(u_next).
/// Always >= 0 for non-negative bases; throws Error on a negative base.
double reward(const RMState& u_next, const RewardPolicy& policy);
double reward(const RMState& u_next, const RewardPolicy& policy, double base_override);

}  // namespace lpt
