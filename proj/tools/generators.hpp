#pragma once

#include <random>
#include <string>
#include <vector>

#include "lpt/formula.hpp"
#include "lpt/trace.hpp"

namespace lpt::app {

using Rng = std::mt19937_64;

/// Random formula of height <= max_height over the given atoms.
Formula random_formula(Rng& rng, int max_height, const std::vector<std::string>& atoms,
                       bool allow_true = true);

/// Random formula of height exactly `height`, atom leaves only.
Formula random_formula_exact(Rng& rng, int height, const std::vector<std::string>& atoms);

/// Each vocabulary label present independently with probability 1/2.
LabelSet random_label_set(Rng& rng, const Vocabulary& vocabulary);

Trace random_trace(Rng& rng, const Vocabulary& vocabulary, int length);

}  // namespace lpt::app
