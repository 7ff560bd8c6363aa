#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "lpt/formula.hpp"
#include "lpt/trace.hpp"

namespace lpt {

/// Outcome of a bounded continuation check.
enum class Verdict : std::uint8_t { True, False, Open };

const char* verdict_name(Verdict v);

/// Whole-trace satisfaction: does the suffix of `trace` starting at t0
/// satisfy f? Deliberately naive recursive evaluation of the finite-trace
/// semantics, one clause per connective; this is the ground truth the
/// incremental engine is tested against. Throws IndexError when t0 lies
/// outside [origin, last].
bool holds(const Formula& f, const Trace& trace, int t0);

/// holds() with memoization over (subformula identity, time) for one fixed
/// trace. Same results, much cheaper when many suffixes of the same trace
/// are queried.
class CachedOracle {
 public:
  explicit CachedOracle(const Trace& trace) : trace_(&trace) {}

  bool holds(const Formula& f, int t0);

 private:
  struct KeyHash {
    std::size_t operator()(const std::pair<const void*, int>& key) const {
      return std::hash<const void*>()(key.first) ^
             (std::hash<int>()(key.second) * 0x9e3779b97f4a7c15ull);
    }
  };

  const Trace* trace_;
  std::unordered_map<std::pair<const void*, int>, bool, KeyHash> memo_;
};

/// Entry t is holds(f, trace, t) for every suffix start; the ground truth
/// for terminal evaluation. Throws EmptyTrace on an empty trace.
std::vector<bool> oracle_tracking_vector(const Formula& f, const Trace& trace);

/// All 2^|P| label sets over the vocabulary, in deterministic order
/// (empty set first).
std::vector<LabelSet> all_label_sets(const Vocabulary& vocabulary);

inline constexpr std::uint64_t kDefaultEnumerationBudget = 1ull << 20;

/// Bounded three-valued check of the suffix starting at t: enumerates every
/// extension of the prefix by 0..horizon label sets over 2^P and evaluates
/// holds() at t on each. True when every extension satisfies, False when
/// none does, Open otherwise. Throws BudgetExceeded when the number of
/// extensions would pass `budget`, IndexError when t is out of range.
///
/// Used to refute engine claims: a tracked 1 with a refuting extension, or a
/// tracked 0 with a satisfying one, is a soundness bug.
Verdict status_under_continuations(const Formula& f, const Trace& prefix, int t,
                                   const Vocabulary& vocabulary, int horizon,
                                   std::uint64_t budget = kDefaultEnumerationBudget);

}  // namespace lpt
