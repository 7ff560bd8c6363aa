#include "lpt/tracking.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <string>
#include <unordered_map>

#include "lpt/oracle.hpp"

namespace lpt {

FormulaTree::FormulaTree(const Formula& root) {
  nodes_.push_back(TreeNode{root, root.kind(), std::nullopt, {}, 0});
  // Appending children of node i before visiting node i+1 yields level
  // order with siblings left to right.
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const std::vector<Formula> kids = nodes_[i].formula.children();
    const int child_depth = nodes_[i].depth + 1;
    for (const Formula& kid : kids) {
      const std::size_t index = nodes_.size();
      nodes_.push_back(TreeNode{kid, kid.kind(), i, {}, child_depth});
      nodes_[i].children.push_back(index);
      height_ = std::max(height_, child_depth);
    }
  }
}

Engine::Engine(FormulaTree tree, int origin)
    : tree_(std::move(tree)), vectors_(tree_.size()), trace_({}, origin) {}

Engine::Engine(const Formula& f, int origin) : Engine(FormulaTree(f), origin) {}

TrackingValue Engine::value(std::size_t node, int t) const {
  const auto& vec = vectors_.at(node);
  const int offset = t - trace_.origin();
  if (offset < 0 || offset >= static_cast<int>(vec.size())) {
    throw IndexError("tracking entry time outside [origin, current]");
  }
  return vec[static_cast<std::size_t>(offset)];
}

std::uint64_t Engine::evaluation_bound() const {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  const auto saturating_mul = [](std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    return a * b;
  };
  if (tree_.height() >= 64) return kMax;
  const std::uint64_t steps = trace_.size();
  return saturating_mul(saturating_mul(std::uint64_t{1} << tree_.height(), steps), steps);
}

void Engine::step_all(const std::vector<LabelSet>& labels) {
  for (const LabelSet& step_labels : labels) step(step_labels);
}

void Engine::step(const LabelSet& labels) {
  if (finalized_) throw AlreadyFinalized("cannot step a finalized engine");
  trace_.append(labels);
  for (auto& vec : vectors_) vec.push_back(kOpen);
  module_pass();
}

void Engine::rerun_modules() {
  if (finalized_) throw AlreadyFinalized("cannot re-run modules after finalize");
  if (trace_.empty()) throw EmptyTrace("no step to re-run");
  module_pass();
}

void Engine::set_entry(std::size_t node, int t, TrackingValue value) {
  auto& slot = vectors_[node][static_cast<std::size_t>(t - trace_.origin())];
  if (slot == kOpen) {
    slot = value;
    return;
  }
  if (slot != value) {
    std::ostringstream msg;
    msg << "locked tracking entry changed: node " << node << ", t=" << t << ", "
        << static_cast<int>(slot) << " -> " << static_cast<int>(value);
    throw InvariantViolation(msg.str());
  }
}

TrackingValue Engine::child_value(std::size_t node, std::size_t child_slot, int t) const {
  const std::size_t child = tree_.node(node).children[child_slot];
  return vectors_[child][static_cast<std::size_t>(t - trace_.origin())];
}

void Engine::module_pass() {
  const int t_now = trace_.last_time();
  const LabelSet& labels = trace_.at(t_now);

  // Leaves first: each distinct label is evaluated once against L_t' and the
  // result copied into every leaf carrying that label.
  std::unordered_map<std::string, TrackingValue> atom_results;
  for (std::size_t i = 0; i < tree_.size(); ++i) {
    const TreeNode& node = tree_.node(i);
    if (node.type == Kind::Atom) {
      auto [it, fresh] = atom_results.try_emplace(node.formula.atom_name(), kOpen);
      if (fresh) {
        it->second = labels.contains(node.formula.atom_name()) ? kSettledTrue : kSettledFalse;
      }
      set_entry(i, t_now, it->second);
    } else if (node.type == Kind::TrueLit) {
      set_entry(i, t_now, kSettledTrue);
    }
  }

  // Inner nodes bottom-up. Children always sit at larger indices than their
  // parent, so one reverse sweep runs every module after its children --
  // the same schedule as promoting any node whose children are all updated.
  for (std::size_t i = tree_.size(); i-- > 0;) {
    if (!is_leaf(tree_.node(i).type)) run_module(i);
  }
}

void Engine::run_module(std::size_t index) {
  const TreeNode& node = tree_.node(index);
  const int t_first = trace_.origin();
  const int t_now = trace_.last_time();

  switch (node.type) {
    case Kind::Not:
      for (int t = t_first; t <= t_now; ++t) {
        ++eval_count_;
        const TrackingValue v = child_value(index, 0, t);
        if (v == kSettledFalse) {
          set_entry(index, t, kSettledTrue);
        } else if (v == kSettledTrue) {
          set_entry(index, t, kSettledFalse);
        }
      }
      return;

    case Kind::And:
      for (int t = t_first; t <= t_now; ++t) {
        ++eval_count_;
        const TrackingValue a = child_value(index, 0, t);
        const TrackingValue b = child_value(index, 1, t);
        if (a == kSettledTrue && b == kSettledTrue) {
          set_entry(index, t, kSettledTrue);
        } else if (a == kSettledFalse || b == kSettledFalse) {
          set_entry(index, t, kSettledFalse);
        }
      }
      return;

    case Kind::Or:
      for (int t = t_first; t <= t_now; ++t) {
        ++eval_count_;
        const TrackingValue a = child_value(index, 0, t);
        const TrackingValue b = child_value(index, 1, t);
        if (a == kSettledTrue || b == kSettledTrue) {
          set_entry(index, t, kSettledTrue);
        } else if (a == kSettledFalse && b == kSettledFalse) {
          set_entry(index, t, kSettledFalse);
        }
      }
      return;

    case Kind::Implies:
      for (int t = t_first; t <= t_now; ++t) {
        ++eval_count_;
        const TrackingValue a = child_value(index, 0, t);
        const TrackingValue b = child_value(index, 1, t);
        if (a == kSettledFalse || b == kSettledTrue) {
          set_entry(index, t, kSettledTrue);
        } else if (a == kSettledTrue && b == kSettledFalse) {
          set_entry(index, t, kSettledFalse);
        }
      }
      return;

    case Kind::Next:
      // A settled child entry at t settles this node at t-1. The t'=T_f
      // half of the module's false condition is covered by terminal
      // evaluation, which also keeps the first window position in range.
      for (int t = t_first; t <= t_now; ++t) {
        ++eval_count_;
        const TrackingValue v = child_value(index, 0, t);
        if (t > t_first && v != kOpen) {
          set_entry(index, t - 1, v);
        }
      }
      return;

    case Kind::Eventually:
      for (int t = t_first; t <= t_now; ++t) {
        ++eval_count_;
        if (child_value(index, 0, t) == kSettledTrue) {
          for (int t0 = t_first; t0 <= t; ++t0) set_entry(index, t0, kSettledTrue);
        }
      }
      return;

    case Kind::Globally:
      for (int t = t_now; t >= t_first; --t) {
        ++eval_count_;
        if (child_value(index, 0, t) == kSettledFalse) {
          for (int t0 = t_first; t0 <= t; ++t0) set_entry(index, t0, kSettledFalse);
          return;
        }
      }
      return;

    case Kind::Until:
    case Kind::WeakUntil: {
      // The window start trails the last position where the lhs is not yet
      // known to hold; a settled rhs then settles the whole window. The
      // Until/WeakUntil difference is entirely terminal.
      int window = t_first;
      for (int t = t_first; t <= t_now; ++t) {
        ++eval_count_;
        const TrackingValue lhs = child_value(index, 0, t);
        const TrackingValue rhs = child_value(index, 1, t);
        if (lhs == kSettledFalse && rhs == kSettledFalse) {
          set_entry(index, t, kSettledFalse);
          window = t + 1;
        } else if (rhs == kSettledTrue) {
          for (int k = window; k <= t; ++k) set_entry(index, k, kSettledTrue);
          window = t + 1;
        } else if (lhs != kSettledTrue) {
          window = t + 1;
        }
      }
      return;
    }

    case Kind::Release:
    case Kind::StrongRelease: {
      int window = t_first;
      for (int t = t_first; t <= t_now; ++t) {
        ++eval_count_;
        const TrackingValue lhs = child_value(index, 0, t);
        const TrackingValue rhs = child_value(index, 1, t);
        if (rhs == kSettledFalse) {
          set_entry(index, t, kSettledFalse);
          window = t + 1;
        } else if (lhs == kSettledTrue && rhs == kSettledTrue) {
          for (int k = window; k <= t; ++k) set_entry(index, k, kSettledTrue);
          window = t + 1;
        } else if (rhs == kOpen) {
          window = t + 1;
        }
      }
      return;
    }

    default:
      throw InvariantViolation("leaf node reached the inner-module dispatch");
  }
}

void Engine::finalize() {
  if (finalized_) throw AlreadyFinalized("engine already finalized");
  if (trace_.empty()) throw EmptyTrace("cannot finalize before the first step");

  CachedOracle oracle(trace_);
  for (std::size_t i = 0; i < tree_.size(); ++i) {
    for (int t = trace_.origin(); t <= trace_.last_time(); ++t) {
      if (value(i, t) == kOpen) {
        set_entry(i, t, oracle.holds(tree_.node(i).formula, t) ? kSettledTrue : kSettledFalse);
      }
    }
  }
  finalized_ = true;
}

nlohmann::json Engine::dump() const {
  nlohmann::json nodes = nlohmann::json::array();
  for (std::size_t i = 0; i < tree_.size(); ++i) {
    const TreeNode& node = tree_.node(i);
    nlohmann::json entry;
    entry["index"] = i;
    entry["formula_text"] = format(node.formula);
    entry["type"] = kind_name(node.type);
    entry["parent"] = node.parent.has_value() ? nlohmann::json(*node.parent)
                                              : nlohmann::json(nullptr);
    nodes.push_back(std::move(entry));
  }

  nlohmann::json j;
  j["formula"] = format(tree_.root());
  j["nodes"] = std::move(nodes);
  j["time"] = started() ? nlohmann::json(current_time()) : nlohmann::json(nullptr);
  j["vectors"] = vectors_;
  j["finalized"] = finalized_;
  j["eval_count"] = eval_count_;
  return j;
}

}  // namespace lpt
