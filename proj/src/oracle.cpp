#include "lpt/oracle.hpp"

#include <sstream>

namespace lpt {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::True: return "true";
    case Verdict::False: return "false";
    case Verdict::Open: return "open";
  }
  return "?";
}

namespace {

bool holds_at(const Formula& f, const Trace& trace, int t0) {
  const int last = trace.last_time();
  switch (f.kind()) {
    case Kind::TrueLit:
      return true;
    case Kind::Atom:
      return trace.at(t0).contains(f.atom_name());
    case Kind::Not:
      return !holds_at(f.child(0), trace, t0);
    case Kind::And:
      return holds_at(f.child(0), trace, t0) && holds_at(f.child(1), trace, t0);
    case Kind::Or:
      return holds_at(f.child(0), trace, t0) || holds_at(f.child(1), trace, t0);
    case Kind::Implies:
      return !holds_at(f.child(0), trace, t0) || holds_at(f.child(1), trace, t0);
    case Kind::Next:
      return t0 < last && holds_at(f.child(0), trace, t0 + 1);
    case Kind::Eventually:
      for (int i = t0; i <= last; ++i) {
        if (holds_at(f.child(0), trace, i)) return true;
      }
      return false;
    case Kind::Globally:
      for (int i = t0; i <= last; ++i) {
        if (!holds_at(f.child(0), trace, i)) return false;
      }
      return true;
    case Kind::Until:
      for (int i = t0; i <= last; ++i) {
        if (holds_at(f.child(1), trace, i)) return true;
        if (!holds_at(f.child(0), trace, i)) return false;
      }
      return false;
    case Kind::WeakUntil:
      // Until-witness or G(lhs); the scan falls off the end exactly when the
      // lhs held everywhere without a witness.
      for (int i = t0; i <= last; ++i) {
        if (holds_at(f.child(1), trace, i)) return true;
        if (!holds_at(f.child(0), trace, i)) return false;
      }
      return true;
    case Kind::Release:
      // For every i: rhs at i, or some earlier k with lhs.
      for (int i = t0; i <= last; ++i) {
        if (holds_at(f.child(1), trace, i)) {
          if (holds_at(f.child(0), trace, i)) return true;  // lhs releases from i+1 on
          continue;
        }
        return false;
      }
      return true;
    case Kind::StrongRelease:
      // Some i with lhs at i and rhs on every step up to and including i.
      for (int i = t0; i <= last; ++i) {
        if (!holds_at(f.child(1), trace, i)) return false;
        if (holds_at(f.child(0), trace, i)) return true;
      }
      return false;
  }
  return false;
}

}  // namespace

bool holds(const Formula& f, const Trace& trace, int t0) {
  if (trace.empty() || t0 < trace.origin() || t0 > trace.last_time()) {
    std::ostringstream msg;
    msg << "suffix start " << t0 << " outside trace range";
    throw IndexError(msg.str());
  }
  return holds_at(f, trace, t0);
}

bool CachedOracle::holds(const Formula& f, int t0) {
  if (trace_->empty() || t0 < trace_->origin() || t0 > trace_->last_time()) {
    throw IndexError("suffix start outside trace range");
  }
  const std::pair<const void*, int> key{f.id(), t0};
  if (auto hit = memo_.find(key); hit != memo_.end()) return hit->second;

  bool value = false;
  const int last = trace_->last_time();
  switch (f.kind()) {
    case Kind::TrueLit:
      value = true;
      break;
    case Kind::Atom:
      value = trace_->at(t0).contains(f.atom_name());
      break;
    case Kind::Not:
      value = !holds(f.child(0), t0);
      break;
    case Kind::And:
      value = holds(f.child(0), t0) && holds(f.child(1), t0);
      break;
    case Kind::Or:
      value = holds(f.child(0), t0) || holds(f.child(1), t0);
      break;
    case Kind::Implies:
      value = !holds(f.child(0), t0) || holds(f.child(1), t0);
      break;
    case Kind::Next:
      value = t0 < last && holds(f.child(0), t0 + 1);
      break;
    case Kind::Eventually:
      value = holds(f.child(0), t0) || (t0 < last && holds(f, t0 + 1));
      break;
    case Kind::Globally:
      value = holds(f.child(0), t0) && (t0 == last || holds(f, t0 + 1));
      break;
    case Kind::Until:
      value = holds(f.child(1), t0) ||
              (holds(f.child(0), t0) && t0 < last && holds(f, t0 + 1));
      break;
    case Kind::WeakUntil:
      value = holds(f.child(1), t0) ||
              (holds(f.child(0), t0) && (t0 == last || holds(f, t0 + 1)));
      break;
    case Kind::Release:
      value = holds(f.child(1), t0) &&
              (holds(f.child(0), t0) || t0 == last || holds(f, t0 + 1));
      break;
    case Kind::StrongRelease:
      value = holds(f.child(1), t0) &&
              (holds(f.child(0), t0) || (t0 < last && holds(f, t0 + 1)));
      break;
  }
  memo_.emplace(key, value);
  return value;
}

std::vector<bool> oracle_tracking_vector(const Formula& f, const Trace& trace) {
  if (trace.empty()) throw EmptyTrace("oracle_tracking_vector needs a nonempty trace");
  std::vector<bool> values;
  values.reserve(trace.size());
  for (int t = trace.origin(); t <= trace.last_time(); ++t) {
    values.push_back(holds(f, trace, t));
  }
  return values;
}

std::vector<LabelSet> all_label_sets(const Vocabulary& vocabulary) {
  const std::size_t n = vocabulary.size();
  std::vector<LabelSet> sets;
  sets.reserve(static_cast<std::size_t>(1) << n);
  for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
    std::vector<std::string> members;
    for (std::size_t bit = 0; bit < n; ++bit) {
      if (mask & (1ull << bit)) members.push_back(vocabulary.labels()[bit]);
    }
    sets.emplace_back(std::move(members));
  }
  return sets;
}

namespace {

struct ContinuationScan {
  bool saw_satisfying = false;
  bool saw_refuting = false;

  bool settled() const { return saw_satisfying && saw_refuting; }
};

void scan_extensions(const Formula& f, Trace& work, int t, int remaining,
                     const std::vector<LabelSet>& alphabet, ContinuationScan& scan) {
  {
    CachedOracle oracle(work);
    if (oracle.holds(f, t)) {
      scan.saw_satisfying = true;
    } else {
      scan.saw_refuting = true;
    }
  }
  if (remaining == 0 || scan.settled()) return;
  for (const LabelSet& labels : alphabet) {
    work.append(labels);
    scan_extensions(f, work, t, remaining - 1, alphabet, scan);
    work.drop_last();
    if (scan.settled()) return;
  }
}

}  // namespace

Verdict status_under_continuations(const Formula& f, const Trace& prefix, int t,
                                   const Vocabulary& vocabulary, int horizon,
                                   std::uint64_t budget) {
  if (prefix.empty() || t < prefix.origin() || t > prefix.last_time()) {
    throw IndexError("suffix start outside prefix range");
  }
  if (horizon < 0) throw Error("horizon must be >= 0");

  const std::uint64_t per_step = 1ull << vocabulary.size();
  std::uint64_t total = 0;
  std::uint64_t layer = 1;
  for (int k = 0; k <= horizon; ++k) {
    total += layer;
    if (total > budget) {
      std::ostringstream msg;
      msg << "continuation enumeration over 2^" << vocabulary.size() << " label sets up to"
          << " horizon " << horizon << " exceeds the budget of " << budget << " extensions";
      throw BudgetExceeded(msg.str());
    }
    if (k < horizon) layer *= per_step;
  }

  const std::vector<LabelSet> alphabet = all_label_sets(vocabulary);
  Trace work = prefix;
  ContinuationScan scan;
  scan_extensions(f, work, t, horizon, alphabet, scan);

  if (!scan.saw_refuting) return Verdict::True;
  if (!scan.saw_satisfying) return Verdict::False;
  return Verdict::Open;
}

}  // namespace lpt
