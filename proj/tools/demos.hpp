#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "lpt/reward_machine.hpp"

namespace lpt::app {

// --------------------------------------------------------------------------
// Key-collection walkthrough
// --------------------------------------------------------------------------

/// Tracks "F keyA & F keyB" through four rollouts: the empty start, keyA
/// obtained at t=2, keyA obtained at t=4 instead, and keyB obtained at t=5
/// instead. The first two keyA timings must produce equal signatures; the
/// keyB rollout must differ.
struct KeyDemoResult {
  std::array<std::string, 4> signatures;
  bool timing_pair_equal = false;
  bool all_match = false;
  std::string text;  // exact stdout payload
};

KeyDemoResult run_key_demo();

// --------------------------------------------------------------------------
// Evaluation-count bench
// --------------------------------------------------------------------------

struct BenchOptions {
  std::vector<int> heights{0, 1, 2, 3, 4};
  std::vector<int> lengths{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20};
  int trials = 50;
  std::uint64_t seed = 0;
};

struct BenchRow {
  int height = 0;
  int trace_len = 0;
  int trials = 0;
  double mean_count = 0.0;
  std::uint64_t max_count = 0;
  std::uint64_t bound = 0;
  double ratio = 0.0;  // max_count / bound
};

struct BenchResult {
  std::vector<BenchRow> rows;
  bool all_within_bound = true;
  std::string csv;  // "height,trace_len,trials,mean_count,bound,ratio" table
};

/// Random formulas of each exact height run over random traces; every trial
/// checks evaluation_count() <= 2^height * len^2.
BenchResult run_bench(const BenchOptions& options);

// --------------------------------------------------------------------------
// Reward-machine gridworld simulation
// --------------------------------------------------------------------------

enum class SimPolicy : std::uint8_t { Goal, Novelty };

struct RmSimOptions {
  int grid = 5;
  int episodes = 2;
  SimPolicy policy = SimPolicy::Novelty;
  std::uint64_t seed = 0;
  double base_reward = 1.0;
  std::string target_digest;  // goal policy; empty = keyA-first terminal digest
  bool learner = false;       // tabular Q-learning instead of a random walk
};

struct RmSimResult {
  nlohmann::json summary;
  // Filled for the novelty policy: the scripted keyA-first episode seeds the
  // seen set, an exact replay must earn 0, and the keyB-first route must
  // earn its first reward at the first behaviorally new step.
  double replay_total_reward = 0.0;
  int divergent_first_reward_step = -1;
  double divergent_first_reward = 0.0;
};

RmSimResult run_rm_sim(const RmSimOptions& options);

}  // namespace lpt::app
