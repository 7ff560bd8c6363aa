#include "generators.hpp"

namespace lpt::app {

namespace {

constexpr Kind kUnaryOps[] = {Kind::Not, Kind::Next, Kind::Eventually, Kind::Globally};
constexpr Kind kBinaryOps[] = {Kind::And,   Kind::Or,      Kind::Implies, Kind::Until,
                               Kind::WeakUntil, Kind::Release, Kind::StrongRelease};

Formula random_leaf(Rng& rng, const std::vector<std::string>& atoms, bool allow_true) {
  if (allow_true && std::uniform_int_distribution<int>(0, 9)(rng) == 0) {
    return Formula::true_lit();
  }
  std::uniform_int_distribution<std::size_t> pick(0, atoms.size() - 1);
  return Formula::atom(atoms[pick(rng)]);
}

}  // namespace

Formula random_formula(Rng& rng, int max_height, const std::vector<std::string>& atoms,
                       bool allow_true) {
  if (max_height <= 0) return random_leaf(rng, atoms, allow_true);

  const int roll = std::uniform_int_distribution<int>(0, 99)(rng);
  if (roll < 20) return random_leaf(rng, atoms, allow_true);
  if (roll < 55) {
    const Kind op = kUnaryOps[std::uniform_int_distribution<int>(0, 3)(rng)];
    return Formula::make(op, {random_formula(rng, max_height - 1, atoms, allow_true)});
  }
  const Kind op = kBinaryOps[std::uniform_int_distribution<int>(0, 6)(rng)];
  return Formula::make(op, {random_formula(rng, max_height - 1, atoms, allow_true),
                            random_formula(rng, max_height - 1, atoms, allow_true)});
}

Formula random_formula_exact(Rng& rng, int height, const std::vector<std::string>& atoms) {
  if (height <= 0) {
    std::uniform_int_distribution<std::size_t> pick(0, atoms.size() - 1);
    return Formula::atom(atoms[pick(rng)]);
  }

  const int op_index = std::uniform_int_distribution<int>(0, 10)(rng);
  if (op_index < 4) {
    return Formula::make(kUnaryOps[op_index], {random_formula_exact(rng, height - 1, atoms)});
  }
  const Kind op = kBinaryOps[op_index - 4];
  Formula tall = random_formula_exact(rng, height - 1, atoms);
  Formula other = random_formula(rng, height - 1, atoms, /*allow_true=*/false);
  if (std::uniform_int_distribution<int>(0, 1)(rng) == 0) {
    return Formula::make(op, {std::move(tall), std::move(other)});
  }
  return Formula::make(op, {std::move(other), std::move(tall)});
}

LabelSet random_label_set(Rng& rng, const Vocabulary& vocabulary) {
  std::vector<std::string> members;
  for (const std::string& label : vocabulary.labels()) {
    if (std::uniform_int_distribution<int>(0, 1)(rng) == 1) members.push_back(label);
  }
  return LabelSet(std::move(members));
}

Trace random_trace(Rng& rng, const Vocabulary& vocabulary, int length) {
  std::vector<LabelSet> steps;
  steps.reserve(static_cast<std::size_t>(length));
  for (int i = 0; i < length; ++i) steps.push_back(random_label_set(rng, vocabulary));
  return Trace(std::move(steps));
}

}  // namespace lpt::app
