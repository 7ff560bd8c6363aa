#include "gridworld.hpp"

namespace lpt::app {

char action_char(Action a) {
  switch (a) {
    case Action::Up: return 'U';
    case Action::Down: return 'D';
    case Action::Left: return 'L';
    case Action::Right: return 'R';
  }
  return '?';
}

std::vector<Action> Gridworld::scripted_key_a_first() const {
  std::vector<Action> actions;
  for (int i = 0; i < n - 1; ++i) actions.push_back(Action::Right);  // -> keyA
  for (int i = 0; i < n - 1; ++i) actions.push_back(Action::Down);
  for (int i = 0; i < n - 1; ++i) actions.push_back(Action::Left);   // -> keyB
  return actions;
}

std::vector<Action> Gridworld::scripted_key_b_first() const {
  std::vector<Action> actions;
  for (int i = 0; i < n - 1; ++i) actions.push_back(Action::Down);   // -> keyB
  for (int i = 0; i < n - 1; ++i) actions.push_back(Action::Up);
  for (int i = 0; i < n - 1; ++i) actions.push_back(Action::Right);  // -> keyA
  return actions;
}

}  // namespace lpt::app
