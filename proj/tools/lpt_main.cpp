#include <chrono>
#include <fstream>
#include <iostream>
#include <set>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "checks.hpp"
#include "demos.hpp"
#include "log.hpp"
#include "lpt/oracle.hpp"
#include "lpt/reward_machine.hpp"
#include "lpt/signature.hpp"
#include "lpt/tracking.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitInvariant = 3;

lpt::Vocabulary infer_vocabulary(const lpt::Formula& f, const lpt::TraceFile& trace_file) {
  if (trace_file.vocabulary.has_value()) return *trace_file.vocabulary;
  std::set<std::string> labels;
  for (const std::string& atom : lpt::atom_names(f)) labels.insert(atom);
  for (const lpt::LabelSet& step : trace_file.trace.steps()) {
    for (const std::string& label : step.members()) labels.insert(label);
  }
  return lpt::Vocabulary(std::vector<std::string>(labels.begin(), labels.end()));
}

void require_atoms_in_vocabulary(const lpt::Formula& f, const lpt::Vocabulary& vocabulary) {
  for (const std::string& atom : lpt::atom_names(f)) {
    if (!vocabulary.contains(atom)) {
      throw lpt::UnknownAtom("atom '" + atom + "' is not in the trace vocabulary", atom);
    }
  }
}

int cmd_parse(const std::string& spec_path) {
  const lpt::Formula f = lpt::load_formula_file(spec_path);
  const lpt::FormulaTree tree(f);

  json nodes = json::array();
  for (std::size_t i = 0; i < tree.size(); ++i) {
    const lpt::TreeNode& node = tree.node(i);
    json entry;
    entry["index"] = i;
    entry["formula_text"] = lpt::format(node.formula);
    entry["type"] = lpt::kind_name(node.type);
    entry["parent"] = node.parent.has_value() ? json(*node.parent) : json(nullptr);
    nodes.push_back(std::move(entry));
  }

  json report;
  report["formula"] = lpt::format(f);
  report["node_count"] = tree.size();
  report["height"] = tree.height();
  report["nodes"] = std::move(nodes);
  std::cout << report.dump(2) << "\n";
  return kExitOk;
}

int cmd_track(const std::string& spec_path, const std::string& trace_path, bool do_finalize,
              bool per_step, const std::string& out_path) {
  const lpt::Formula f = lpt::load_formula_file(spec_path);
  const lpt::TraceFile trace_file = lpt::load_trace_file(trace_path);
  if (trace_file.vocabulary.has_value()) {
    require_atoms_in_vocabulary(f, *trace_file.vocabulary);
  }

  std::ofstream file_out;
  if (!out_path.empty()) {
    file_out.open(out_path);
    if (!file_out) throw lpt::Error("cannot open output file: " + out_path);
  }
  std::ostream& out = out_path.empty() ? std::cout : file_out;

  lpt::Engine engine(f);
  const auto started_at = std::chrono::steady_clock::now();
  const auto emit_report = [&] {
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started_at).count();
    if (engine.evaluation_count() > engine.evaluation_bound()) {
      throw lpt::InvariantViolation("evaluation count left its ceiling");
    }
    json report;
    report["dump"] = engine.dump();
    report["signature"] = lpt::signature_json(lpt::make_signature(engine));
    report["eval_count"] = engine.evaluation_count();
    report["bound_value"] = engine.evaluation_bound();
    report["wall_time_s"] = wall;
    out << report.dump() << "\n";
  };

  for (const lpt::LabelSet& labels : trace_file.trace.steps()) {
    engine.step(labels);
    if (per_step) emit_report();
  }
  if (do_finalize) {
    engine.finalize();
    emit_report();
  } else if (!per_step) {
    emit_report();
  }
  return kExitOk;
}

int cmd_oracle_check(const std::string& spec_path, const std::string& trace_path, int horizon,
                     std::uint64_t budget, const std::string& dump_path) {
  const lpt::Formula f = lpt::load_formula_file(spec_path);
  const lpt::TraceFile trace_file = lpt::load_trace_file(trace_path);
  const lpt::Vocabulary vocabulary = infer_vocabulary(f, trace_file);
  require_atoms_in_vocabulary(f, vocabulary);

  lpt::app::CheckReport report;
  if (dump_path.empty()) {
    lpt::app::log_info("checking instance with horizon " + std::to_string(horizon) + " over 2^" +
                       std::to_string(vocabulary.size()) + " label sets");
    report = lpt::app::check_instance(f, trace_file.trace, vocabulary, horizon, budget);
  } else {
    std::ifstream dump_in(dump_path);
    if (!dump_in) throw lpt::Error("cannot open dump file: " + dump_path);
    std::stringstream buffer;
    buffer << dump_in.rdbuf();
    const std::string text = buffer.str();
    json dump;
    try {
      dump = json::parse(text);
    } catch (const json::parse_error&) {
      // Per-step track output is JSON lines; validate the newest report.
      const auto content_end = text.find_last_not_of(" \t\r\n");
      if (content_end == std::string::npos) {
        throw lpt::FormatError("dump file is empty: " + dump_path);
      }
      const auto line_break = text.find_last_of('\n', content_end);
      const std::size_t begin = line_break == std::string::npos ? 0 : line_break + 1;
      try {
        dump = json::parse(text.substr(begin, content_end - begin + 1));
      } catch (const json::parse_error& err) {
        throw lpt::FormatError(std::string("invalid dump JSON: ") + err.what());
      }
    }
    // Accept either a bare dump or a full track report.
    if (dump.contains("dump")) dump = dump["dump"];
    report = lpt::app::check_dump(f, trace_file.trace, dump, vocabulary, horizon, budget);
  }

  if (report.ok) {
    json summary;
    summary["result"] = "pass";
    summary["claims_checked"] = report.claims_checked;
    summary["extensions_checked"] = report.extensions_checked;
    std::cout << summary.dump() << "\n";
    return kExitOk;
  }

  const lpt::app::CheckViolation& v = report.violations.front();
  std::cerr << "oracle-check FAILED: " << v.kind << " violation at node " << v.node << ", t="
            << v.t << ", t'=" << v.t_prime << ": " << v.detail << "\n";
  return kExitInvariant;
}

int cmd_demo_keys() {
  const lpt::app::KeyDemoResult demo = lpt::app::run_key_demo();
  std::cout << demo.text;
  return demo.all_match ? kExitOk : kExitInvariant;
}

int cmd_rm_sim(const lpt::app::RmSimOptions& options) {
  const lpt::app::RmSimResult result = lpt::app::run_rm_sim(options);
  std::cout << result.summary.dump(2) << "\n";
  return kExitOk;
}

int cmd_bench(const lpt::app::BenchOptions& options) {
  const lpt::app::BenchResult result = lpt::app::run_bench(options);
  std::cout << result.csv;
  if (!result.all_within_bound) {
    std::cerr << "bench FAILED: an evaluation count left the 2^height*len^2 ceiling\n";
    return kExitInvariant;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Incremental three-valued progress tracking for finite-trace LTL"};
  app.require_subcommand(1);

  std::string spec_path;
  std::string trace_path;
  std::string out_path;
  std::string dump_path;
  bool flag_finalize = false;
  bool flag_per_step = false;
  int horizon = 3;
  std::uint64_t budget = lpt::kDefaultEnumerationBudget;

  auto* parse_cmd = app.add_subcommand("parse", "Parse a specification file and report its tree");
  parse_cmd->add_option("spec", spec_path, "specification file")->required();

  auto* track_cmd = app.add_subcommand("track", "Run a trace through the tracker");
  track_cmd->add_option("spec", spec_path, "specification file")->required();
  track_cmd->add_option("trace", trace_path, "trace file (JSON lines)")->required();
  track_cmd->add_flag("--finalize", flag_finalize, "settle remaining open entries at the end");
  track_cmd->add_flag("--per-step", flag_per_step, "emit one report per update");
  track_cmd->add_option("--out", out_path, "write reports to a file instead of stdout");

  auto* check_cmd =
      app.add_subcommand("oracle-check", "Cross-check tracking output against the semantics");
  check_cmd->add_option("spec", spec_path, "specification file")->required();
  check_cmd->add_option("trace", trace_path, "trace file")->required();
  check_cmd->add_option("--horizon", horizon, "continuation horizon K")->capture_default_str();
  check_cmd->add_option("--budget", budget, "extension enumeration cap")->capture_default_str();
  check_cmd->add_option("--dump", dump_path, "verify a previously written tracking dump");

  auto* demo_cmd = app.add_subcommand("demo-keys", "Reproduce the two-key walkthrough");
  (void)demo_cmd;

  lpt::app::RmSimOptions sim;
  std::string policy_name = "novelty";
  auto* sim_cmd = app.add_subcommand("rm-sim", "Reward-machine gridworld simulation");
  sim_cmd->add_option("--grid", sim.grid, "grid side length")->capture_default_str();
  sim_cmd->add_option("--episodes", sim.episodes, "exploration episodes")->capture_default_str();
  sim_cmd->add_option("--policy", policy_name, "reward policy: goal | novelty")
      ->check(CLI::IsMember({"goal", "novelty"}))
      ->capture_default_str();
  sim_cmd->add_option("--seed", sim.seed, "random seed")->capture_default_str();
  sim_cmd->add_option("--base-reward", sim.base_reward, "reward handed out on a hit")
      ->capture_default_str();
  sim_cmd->add_option("--target-digest", sim.target_digest,
                      "goal digest (default: keyA-first terminal signature digest)");
  sim_cmd->add_flag("--learner", sim.learner, "tabular Q-learning instead of a random walk");

  lpt::app::BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "Evaluation-count ceiling measurements");
  bench_cmd->add_option("--heights", bench.heights, "formula heights")->delimiter(',');
  bench_cmd->add_option("--lengths", bench.lengths, "trace lengths")->delimiter(',');
  bench_cmd->add_option("--trials", bench.trials, "trials per cell")->capture_default_str();
  bench_cmd->add_option("--seed", bench.seed, "random seed")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (parse_cmd->parsed()) return cmd_parse(spec_path);
    if (track_cmd->parsed()) {
      return cmd_track(spec_path, trace_path, flag_finalize, flag_per_step, out_path);
    }
    if (check_cmd->parsed()) {
      return cmd_oracle_check(spec_path, trace_path, horizon, budget, dump_path);
    }
    if (demo_cmd->parsed()) return cmd_demo_keys();
    if (sim_cmd->parsed()) {
      sim.policy = policy_name == "goal" ? lpt::app::SimPolicy::Goal : lpt::app::SimPolicy::Novelty;
      return cmd_rm_sim(sim);
    }
    if (bench_cmd->parsed()) return cmd_bench(bench);
  } catch (const lpt::InvariantViolation& err) {
    std::cerr << "internal invariant violation: " << err.what() << "\n";
    return kExitInvariant;
  } catch (const lpt::Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitInput;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitInput;
  }
  return kExitOk;
}
