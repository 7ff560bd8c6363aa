#include "demos.hpp"

#include <iomanip>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "generators.hpp"
#include "gridworld.hpp"
#include "lpt/signature.hpp"

namespace lpt::app {

// --------------------------------------------------------------------------
// Key-collection walkthrough
// --------------------------------------------------------------------------

namespace {

std::string track_signature(const Formula& f, const std::vector<LabelSet>& steps) {
  Engine engine(f);
  for (const LabelSet& labels : steps) engine.step(labels);
  return signature_text(make_signature(engine));
}

}  // namespace

KeyDemoResult run_key_demo() {
  const Formula spec = parse("F keyA & F keyB");
  const LabelSet none{};
  const LabelSet key_a{"keyA"};
  const LabelSet key_b{"keyB"};

  KeyDemoResult result;
  result.signatures[0] = track_signature(spec, {none});
  result.signatures[1] = track_signature(spec, {none, none, key_a});
  result.signatures[2] = track_signature(spec, {none, none, none, none, key_a});
  result.signatures[3] = track_signature(spec, {none, none, none, none, none, key_b});

  static const std::array<std::string, 4> expected = {
      "[[-1],[-1],[-1],[0],[0]]",
      "[[-1],[1],[-1],[0,1],[0]]",
      "[[-1],[1],[-1],[0,1],[0]]",
      "[[-1],[-1],[1],[0],[0,1]]",
  };

  result.timing_pair_equal = result.signatures[1] == result.signatures[2];
  result.all_match = result.timing_pair_equal;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (result.signatures[i] != expected[i]) result.all_match = false;
  }

  std::ostringstream out;
  out << "formula: " << format(spec) << "\n";
  out << "nodes: [F keyA & F keyB, F keyA, F keyB, keyA, keyB]\n";
  out << "scenario 1 (empty start, t'=0):   " << result.signatures[0] << "\n";
  out << "scenario 2 (keyA at t=2):         " << result.signatures[1] << "\n";
  out << "scenario 3 (keyA at t=4):         " << result.signatures[2] << "\n";
  out << "scenario 4 (keyB at t=5):         " << result.signatures[3] << "\n";
  out << "scenario 2 == scenario 3: " << (result.timing_pair_equal ? "yes" : "NO") << "\n";
  out << (result.all_match ? "all signatures match" : "SIGNATURE MISMATCH") << "\n";
  result.text = out.str();
  return result;
}

// --------------------------------------------------------------------------
// Evaluation-count bench
// --------------------------------------------------------------------------

BenchResult run_bench(const BenchOptions& options) {
  if (options.trials < 0) throw Error("trial count must be >= 0");
  for (const int height : options.heights) {
    if (height < 0 || height > 16) throw Error("bench heights must lie in [0, 16]");
  }
  for (const int length : options.lengths) {
    if (length < 1 || length > 100000) throw Error("bench lengths must lie in [1, 100000]");
  }

  BenchResult result;
  const Vocabulary vocabulary({"p", "q"});
  const std::vector<std::string> atoms = vocabulary.labels();

  std::ostringstream csv;
  csv << "height,trace_len,trials,mean_count,bound,ratio\n";

  Rng rng(options.seed);
  for (const int height : options.heights) {
    for (const int length : options.lengths) {
      BenchRow row;
      row.height = height;
      row.trace_len = length;
      row.trials = options.trials;
      row.bound = (std::uint64_t{1} << height) * static_cast<std::uint64_t>(length) *
                  static_cast<std::uint64_t>(length);

      std::uint64_t total = 0;
      for (int trial = 0; trial < options.trials; ++trial) {
        const Formula f = random_formula_exact(rng, height, atoms);
        if (f.height() != height) {
          throw InvariantViolation("bench generator missed the requested height");
        }
        Engine engine(f);
        for (int i = 0; i < length; ++i) engine.step(random_label_set(rng, vocabulary));
        const std::uint64_t count = engine.evaluation_count();
        total += count;
        row.max_count = std::max(row.max_count, count);
        if (count > row.bound) result.all_within_bound = false;
      }
      row.mean_count = options.trials > 0 ? static_cast<double>(total) / options.trials : 0.0;
      row.ratio = row.bound > 0 ? static_cast<double>(row.max_count) / row.bound : 0.0;

      csv << row.height << ',' << row.trace_len << ',' << row.trials << ',' << std::fixed
          << std::setprecision(2) << row.mean_count << ',' << row.bound << ','
          << std::setprecision(4) << row.ratio << "\n";
      result.rows.push_back(row);
    }
  }
  result.csv = csv.str();
  return result;
}

// --------------------------------------------------------------------------
// Reward-machine gridworld simulation
// --------------------------------------------------------------------------

namespace {

struct EpisodeLog {
  std::string actions;
  std::vector<double> rewards;
  std::vector<std::string> digests;
  double total_reward = 0.0;
  int first_reward_step = -1;
  std::string final_digest;
};

/// Runs one episode; every visited digest lands in `seen` after its reward
/// is taken, so the novelty policy sees each behavior pattern once.
EpisodeLog play(const Gridworld& world, const Formula& spec, const std::vector<Action>& actions,
                const RewardPolicy& policy, std::set<std::string>* seen) {
  EpisodeLog log;
  int row = world.start_row;
  int col = world.start_col;

  RMState state = RMState::init(spec);
  const auto consume = [&](const RMState& next) {
    const double r = reward(next, policy);
    log.rewards.push_back(r);
    log.total_reward += r;
    if (r > 0.0 && log.first_reward_step < 0) {
      log.first_reward_step = static_cast<int>(log.rewards.size()) - 1;
    }
    const std::string digest = next.digest();
    log.digests.push_back(digest);
    if (seen != nullptr) seen->insert(digest);
  };

  state = state.step(world.label(row, col));
  consume(state);
  for (const Action action : actions) {
    log.actions.push_back(action_char(action));
    world.move(row, col, action);
    state = state.step(world.label(row, col));
    consume(state);
  }
  log.final_digest = log.digests.back();
  return log;
}

nlohmann::json episode_json(const EpisodeLog& log, const std::string& kind, int index) {
  nlohmann::json j;
  j["index"] = index;
  j["kind"] = kind;
  j["actions"] = log.actions;
  j["total_reward"] = log.total_reward;
  j["first_reward_step"] = log.first_reward_step;
  j["rewards"] = log.rewards;
  j["digests"] = log.digests;
  return j;
}

std::vector<Action> random_walk(Rng& rng, int length) {
  std::vector<Action> actions;
  actions.reserve(static_cast<std::size_t>(length));
  std::uniform_int_distribution<int> pick(0, 3);
  for (int i = 0; i < length; ++i) actions.push_back(static_cast<Action>(pick(rng)));
  return actions;
}

/// Minimal tabular Q-learning walker, example code for plugging the machine
/// into a learner. State = (cell, reward-machine digest); the log records
/// the rewards as the learner experienced them.
EpisodeLog greedy_episode(const Gridworld& world, const Formula& spec, Rng& rng,
                          std::map<std::string, std::array<double, 4>>& q_table,
                          const RewardPolicy& policy, std::set<std::string>* seen,
                          int horizon) {
  constexpr double kAlpha = 0.5;
  constexpr double kGamma = 0.9;
  constexpr double kEpsilon = 0.2;

  EpisodeLog log;
  int row = world.start_row;
  int col = world.start_col;

  RMState state = RMState::init(spec);
  const auto consume = [&](const RMState& next) {
    const double r = reward(next, policy);
    log.rewards.push_back(r);
    log.total_reward += r;
    if (r > 0.0 && log.first_reward_step < 0) {
      log.first_reward_step = static_cast<int>(log.rewards.size()) - 1;
    }
    const std::string digest = next.digest();
    log.digests.push_back(digest);
    if (seen != nullptr) seen->insert(digest);
    return r;
  };

  state = state.step(world.label(row, col));
  consume(state);

  const auto key = [&](int r, int c, const RMState& s) {
    return std::to_string(r) + "," + std::to_string(c) + "," + s.digest();
  };

  for (int i = 0; i < horizon; ++i) {
    const std::string here = key(row, col, state);
    auto& q_here = q_table[here];
    int choice;
    if (std::uniform_real_distribution<double>(0.0, 1.0)(rng) < kEpsilon) {
      choice = std::uniform_int_distribution<int>(0, 3)(rng);
    } else {
      choice = 0;
      for (int a = 1; a < 4; ++a) {
        if (q_here[a] > q_here[choice]) choice = a;
      }
    }
    const Action action = static_cast<Action>(choice);
    log.actions.push_back(action_char(action));

    world.move(row, col, action);
    state = state.step(world.label(row, col));
    const double r = consume(state);

    auto& q_next = q_table[key(row, col, state)];
    double best_next = q_next[0];
    for (int a = 1; a < 4; ++a) best_next = std::max(best_next, q_next[a]);
    q_here[choice] += kAlpha * (r + kGamma * best_next - q_here[choice]);
  }
  log.final_digest = log.digests.back();
  return log;
}

}  // namespace

RmSimResult run_rm_sim(const RmSimOptions& options) {
  if (options.grid < 2) throw Error("rm-sim needs a grid of at least 2x2");
  if (options.episodes < 0) throw Error("episode count must be >= 0");
  if (options.base_reward < 0.0) throw Error("base reward must be non-negative");

  const Gridworld world(options.grid);
  const Formula spec = parse("F keyA & F keyB");
  const int horizon = 4 * options.grid;

  RmSimResult result;
  nlohmann::json& summary = result.summary;
  summary["grid"] = options.grid;
  summary["seed"] = options.seed;
  summary["formula"] = format(spec);
  summary["base_reward"] = options.base_reward;
  summary["policy"] = options.policy == SimPolicy::Novelty ? "novelty" : "goal";
  summary["learner"] = options.learner;

  // Goal target: terminal signature digest of the scripted keyA-first route,
  // unless the caller pinned one.
  std::string target = options.target_digest;
  if (options.policy == SimPolicy::Goal && target.empty()) {
    RMState probe = RMState::init(spec);
    int row = world.start_row;
    int col = world.start_col;
    probe = probe.step(world.label(row, col));
    for (const Action action : world.scripted_key_a_first()) {
      world.move(row, col, action);
      probe = probe.step(world.label(row, col));
    }
    target = probe.digest();
  }
  if (options.policy == SimPolicy::Goal) summary["target_digest"] = target;

  // Exploration episodes under the chosen policy; the novelty seen-set
  // accumulates across them.
  std::set<std::string> seen_explore;
  const RewardPolicy policy =
      options.policy == SimPolicy::Novelty
          ? RewardPolicy::novelty(seen_explore, options.base_reward)
          : RewardPolicy::goal_state(target, options.base_reward);

  Rng rng(options.seed);
  std::map<std::string, std::array<double, 4>> q_table;
  summary["episodes"] = nlohmann::json::array();
  std::set<std::string>* explore_seen =
      options.policy == SimPolicy::Novelty ? &seen_explore : nullptr;
  for (int episode = 0; episode < options.episodes; ++episode) {
    if (options.learner) {
      Rng learner_rng(rng());
      const EpisodeLog log =
          greedy_episode(world, spec, learner_rng, q_table, policy, explore_seen, horizon);
      summary["episodes"].push_back(episode_json(log, "learner", episode));
      continue;
    }
    const EpisodeLog log =
        play(world, spec, random_walk(rng, horizon), policy, explore_seen);
    summary["episodes"].push_back(episode_json(log, "explore", episode));
  }

  // Self-contained replay/divergence demonstration for the novelty policy:
  // a scripted keyA-first episode seeds a fresh seen-set, an exact replay
  // must earn nothing, and the keyB-first route must earn its first reward
  // at the first behaviorally new step.
  if (options.policy == SimPolicy::Novelty) {
    std::set<std::string> seen_demo;
    const RewardPolicy demo_policy = RewardPolicy::novelty(seen_demo, options.base_reward);

    EpisodeLog base = play(world, spec, world.scripted_key_a_first(), demo_policy, &seen_demo);
    EpisodeLog replay = play(world, spec, world.scripted_key_a_first(), demo_policy, &seen_demo);
    EpisodeLog divergent =
        play(world, spec, world.scripted_key_b_first(), demo_policy, &seen_demo);

    result.replay_total_reward = replay.total_reward;
    result.divergent_first_reward_step = divergent.first_reward_step;
    result.divergent_first_reward =
        divergent.first_reward_step >= 0
            ? divergent.rewards[static_cast<std::size_t>(divergent.first_reward_step)]
            : 0.0;

    nlohmann::json demo;
    demo["base"] = episode_json(base, "scripted-keyA-first", 0);
    demo["replay"] = episode_json(replay, "replay-keyA-first", 1);
    demo["divergent"] = episode_json(divergent, "scripted-keyB-first", 2);
    demo["replay_total_reward"] = result.replay_total_reward;
    demo["divergent_first_reward_step"] = result.divergent_first_reward_step;
    demo["divergent_first_reward"] = result.divergent_first_reward;
    summary["novelty_demo"] = std::move(demo);
  }

  return result;
}

}  // namespace lpt::app
