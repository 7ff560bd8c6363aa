#pragma once

#include <string>
#include <vector>

#include "lpt/trace.hpp"

namespace lpt::app {

enum class Action : std::uint8_t { Up, Down, Left, Right };

char action_char(Action a);

/// N x N grid with two key cells. The environment itself is memoryless: the
/// labeling reports occupancy of a key cell at each step and nothing else;
/// whatever "collected" means lives entirely in the tracking state.
struct Gridworld {
  explicit Gridworld(int n)
      : n(n), start_row(0), start_col(0), key_a_row(0), key_a_col(n - 1), key_b_row(n - 1),
        key_b_col(0) {}

  int n;
  int start_row, start_col;
  int key_a_row, key_a_col;
  int key_b_row, key_b_col;

  LabelSet label(int row, int col) const {
    if (row == key_a_row && col == key_a_col) return LabelSet{"keyA"};
    if (row == key_b_row && col == key_b_col) return LabelSet{"keyB"};
    return LabelSet{};
  }

  void move(int& row, int& col, Action action) const {
    switch (action) {
      case Action::Up: row = std::max(0, row - 1); break;
      case Action::Down: row = std::min(n - 1, row + 1); break;
      case Action::Left: col = std::max(0, col - 1); break;
      case Action::Right: col = std::min(n - 1, col + 1); break;
    }
  }

  /// Start -> keyA (east corner) -> keyB (south corner).
  std::vector<Action> scripted_key_a_first() const;

  /// Start -> keyB -> keyA.
  std::vector<Action> scripted_key_b_first() const;
};

}  // namespace lpt::app
