#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "lpt/oracle.hpp"
#include "lpt/tracking.hpp"

namespace lpt::app {

struct CheckViolation {
  std::string kind;  // "soundness" | "lock-in" | "terminal" | "dump"
  std::size_t node = 0;
  int t = 0;        // suffix start of the offending entry
  int t_prime = 0;  // update time at which it was observed
  std::string detail;
};

struct CheckReport {
  bool ok = true;
  std::vector<CheckViolation> violations;
  std::uint64_t extensions_checked = 0;
  std::uint64_t claims_checked = 0;
};

/// Replays the trace through a fresh engine and verifies, stopping at the
/// first violation:
///   - soundness: after every update, no settled 1 admits a refuting
///     continuation of length <= horizon over 2^P and no settled 0 admits a
///     satisfying one;
///   - lock-in:   no settled entry ever changes between updates;
///   - terminal:  after finalize, every entry equals whole-trace
///     satisfaction of its node's suffix.
/// Throws BudgetExceeded when a single update's continuation enumeration
/// would pass `budget`.
CheckReport check_instance(const Formula& f, const Trace& trace, const Vocabulary& vocabulary,
                           int horizon, std::uint64_t budget = kDefaultEnumerationBudget);

/// Validates a previously written tracking dump against the oracle. For a
/// finalized dump every entry must match whole-trace satisfaction; for a
/// live dump every settled entry must survive the bounded continuation
/// check at the dump's update time.
CheckReport check_dump(const Formula& f, const Trace& trace, const nlohmann::json& dump,
                       const Vocabulary& vocabulary, int horizon,
                       std::uint64_t budget = kDefaultEnumerationBudget);

}  // namespace lpt::app
