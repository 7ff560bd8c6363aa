#include "checks.hpp"

#include <functional>
#include <sstream>

namespace lpt::app {

namespace {

std::string continuation_text(const std::vector<LabelSet>& extension) {
  nlohmann::json j = nlohmann::json::array();
  for (const LabelSet& step : extension) j.push_back(step.members());
  return j.dump();
}

std::uint64_t extension_total(std::size_t vocab_size, int horizon) {
  const std::uint64_t per_step = 1ull << vocab_size;
  std::uint64_t total = 0;
  std::uint64_t layer = 1;
  for (int k = 0; k <= horizon; ++k) {
    total += layer;
    if (k < horizon) layer *= per_step;
  }
  return total;
}

struct Claim {
  std::size_t node;
  int t;
  TrackingValue value;
};

/// Visits every extension of `work` by 0..remaining label sets; the visitor
/// returns false to stop the walk.
bool walk_extensions(Trace& work, std::vector<LabelSet>& extension,
                     const std::vector<LabelSet>& alphabet, int remaining,
                     const std::function<bool(const Trace&, const std::vector<LabelSet>&)>& visit) {
  if (!visit(work, extension)) return false;
  if (remaining == 0) return true;
  for (const LabelSet& labels : alphabet) {
    work.append(labels);
    extension.push_back(labels);
    const bool keep_going = walk_extensions(work, extension, alphabet, remaining - 1, visit);
    extension.pop_back();
    work.drop_last();
    if (!keep_going) return false;
  }
  return true;
}

}  // namespace

CheckReport check_instance(const Formula& f, const Trace& trace, const Vocabulary& vocabulary,
                           int horizon, std::uint64_t budget) {
  CheckReport report;
  if (trace.empty()) throw EmptyTrace("check_instance needs a nonempty trace");
  if (extension_total(vocabulary.size(), horizon) > budget) {
    throw BudgetExceeded("continuation enumeration exceeds the configured budget; lower the "
                         "horizon or shrink the vocabulary");
  }

  const std::vector<LabelSet> alphabet = all_label_sets(vocabulary);
  Engine engine(f);
  const FormulaTree& tree = engine.tree();
  std::vector<std::vector<TrackingValue>> previous;

  for (const LabelSet& labels : trace.steps()) {
    engine.step(labels);
    const int now = engine.current_time();

    // Lock-in: entries settled at an earlier update must read back unchanged.
    for (std::size_t node = 0; node < tree.size(); ++node) {
      if (node >= previous.size()) break;
      for (std::size_t k = 0; k < previous[node].size(); ++k) {
        const TrackingValue before = previous[node][k];
        const TrackingValue after = engine.vectors()[node][k];
        if (before != kOpen && after != before) {
          std::ostringstream detail;
          detail << "entry changed " << static_cast<int>(before) << " -> "
                 << static_cast<int>(after);
          report.violations.push_back(CheckViolation{
              "lock-in", node, trace.origin() + static_cast<int>(k), now, detail.str()});
          report.ok = false;
          return report;
        }
      }
    }
    previous = engine.vectors();

    // Soundness: every settled entry must survive every continuation of the
    // prefix seen so far, up to the horizon.
    std::vector<Claim> claims;
    for (std::size_t node = 0; node < tree.size(); ++node) {
      for (int t = trace.origin(); t <= now; ++t) {
        const TrackingValue v = engine.value(node, t);
        if (v != kOpen) claims.push_back(Claim{node, t, v});
      }
    }
    report.claims_checked += claims.size();

    Trace work = engine.trace();
    std::vector<LabelSet> extension;
    walk_extensions(
        work, extension, alphabet, horizon,
        [&](const Trace& extended, const std::vector<LabelSet>& ext) {
          ++report.extensions_checked;
          CachedOracle oracle(extended);
          for (const Claim& claim : claims) {
            const bool satisfied = oracle.holds(tree.node(claim.node).formula, claim.t);
            if ((claim.value == kSettledTrue && !satisfied) ||
                (claim.value == kSettledFalse && satisfied)) {
              std::ostringstream detail;
              detail << "entry " << static_cast<int>(claim.value) << " for node '"
                     << format(tree.node(claim.node).formula) << "' refuted by continuation "
                     << continuation_text(ext);
              report.violations.push_back(
                  CheckViolation{"soundness", claim.node, claim.t, now, detail.str()});
              report.ok = false;
              return false;
            }
          }
          return true;
        });
    if (!report.ok) return report;
  }

  // Terminal completeness: finalized entries equal whole-trace satisfaction,
  // computed by the plain recursive oracle (independent of the memoized
  // route finalize() itself uses).
  engine.finalize();
  for (std::size_t node = 0; node < tree.size(); ++node) {
    const std::vector<bool> expected = oracle_tracking_vector(tree.node(node).formula, trace);
    for (std::size_t k = 0; k < expected.size(); ++k) {
      const TrackingValue got = engine.vectors()[node][k];
      const TrackingValue want = expected[k] ? kSettledTrue : kSettledFalse;
      if (got != want) {
        std::ostringstream detail;
        detail << "finalized entry " << static_cast<int>(got) << ", oracle says "
               << static_cast<int>(want) << " for node '" << format(tree.node(node).formula)
               << "'";
        report.violations.push_back(CheckViolation{"terminal", node,
                                                   trace.origin() + static_cast<int>(k),
                                                   trace.last_time(), detail.str()});
        report.ok = false;
        return report;
      }
    }
  }
  return report;
}

CheckReport check_dump(const Formula& f, const Trace& trace, const nlohmann::json& dump,
                       const Vocabulary& vocabulary, int horizon, std::uint64_t budget) {
  CheckReport report;
  const FormulaTree tree(f);

  if (!dump.contains("vectors") || !dump["vectors"].is_array()) {
    throw FormatError("dump is missing its \"vectors\" array");
  }
  if (dump["vectors"].size() != tree.size()) {
    throw FormatError("dump has " + std::to_string(dump["vectors"].size()) +
                      " vectors but the formula tree has " + std::to_string(tree.size()) +
                      " nodes");
  }
  const bool finalized = dump.value("finalized", false);
  if (!dump.contains("time") || dump["time"].is_null()) {
    throw FormatError("dump carries no update time");
  }
  const int t_prime = dump["time"].get<int>();
  if (trace.empty() || t_prime < trace.origin() || t_prime > trace.last_time()) {
    throw FormatError("dump time lies outside the trace");
  }
  const std::size_t expected_len = static_cast<std::size_t>(t_prime - trace.origin()) + 1;

  Trace prefix(std::vector<LabelSet>(trace.steps().begin(),
                                     trace.steps().begin() + static_cast<long>(expected_len)),
               trace.origin());

  for (std::size_t node = 0; node < tree.size(); ++node) {
    const nlohmann::json& vec = dump["vectors"][node];
    if (!vec.is_array() || vec.size() != expected_len) {
      throw FormatError("dump vector " + std::to_string(node) + " does not span the trace");
    }
    for (std::size_t k = 0; k < vec.size(); ++k) {
      const int raw = vec[k].get<int>();
      if (raw != -1 && raw != 0 && raw != 1) {
        throw FormatError("dump entries must be -1, 0 or 1");
      }
      const int t = trace.origin() + static_cast<int>(k);

      if (finalized) {
        if (raw == -1) {
          report.violations.push_back(
              CheckViolation{"dump", node, t, t_prime, "open entry in a finalized dump"});
          report.ok = false;
          return report;
        }
        const bool want = holds(tree.node(node).formula, prefix, t);
        ++report.claims_checked;
        if ((raw == 1) != want) {
          std::ostringstream detail;
          detail << "finalized entry " << raw << ", oracle says " << (want ? 1 : 0)
                 << " for node '" << format(tree.node(node).formula) << "'";
          report.violations.push_back(CheckViolation{"dump", node, t, t_prime, detail.str()});
          report.ok = false;
          return report;
        }
        continue;
      }

      if (raw == -1) continue;
      ++report.claims_checked;
      const Verdict verdict = status_under_continuations(tree.node(node).formula, prefix, t,
                                                         vocabulary, horizon, budget);
      const Verdict needed = (raw == 1) ? Verdict::True : Verdict::False;
      if (verdict != needed) {
        std::ostringstream detail;
        detail << "entry " << raw << " for node '" << format(tree.node(node).formula)
               << "' but bounded continuation check says " << verdict_name(verdict);
        report.violations.push_back(CheckViolation{"dump", node, t, t_prime, detail.str()});
        report.ok = false;
        return report;
      }
    }
  }
  return report;
}

}  // namespace lpt::app
