#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "lpt/formula.hpp"
#include "lpt/trace.hpp"

namespace lpt {

/// Ternary tracking value: 1 = settled true, 0 = settled false, -1 = open.
using TrackingValue = std::int8_t;

inline constexpr TrackingValue kSettledTrue = 1;
inline constexpr TrackingValue kSettledFalse = 0;
inline constexpr TrackingValue kOpen = -1;

struct TreeNode {
  Formula formula;
  Kind type;  // top-level connective of `formula`
  std::optional<std::size_t> parent;
  std::vector<std::size_t> children;
  int depth;
};

/// Breadth-first indexed view of a formula: node 0 is the whole formula,
/// every other node one of its parent's immediate subformulas; all nodes at
/// depth d precede depth d+1, siblings left to right. Leaves are exactly the
/// TrueLit/Atom nodes. Distinct occurrences of the same atom are distinct
/// nodes.
class FormulaTree {
 public:
  explicit FormulaTree(const Formula& root);

  const std::vector<TreeNode>& nodes() const { return nodes_; }
  const TreeNode& node(std::size_t index) const { return nodes_.at(index); }
  std::size_t size() const { return nodes_.size(); }
  const Formula& root() const { return nodes_.front().formula; }

  /// Depth of the deepest node, root at level 0.
  int height() const { return height_; }

 private:
  std::vector<TreeNode> nodes_;
  int height_ = 0;
};

inline FormulaTree build_tree(const Formula& f) { return FormulaTree(f); }

/// Incremental progress tracker. Owns one tracking vector per tree node and
/// advances them one trace step at a time:
///
///   Engine engine(parse("F keyA & F keyB"));
///   engine.step(LabelSet{});
///   engine.step(LabelSet{"keyA"});
///   ...
///   engine.finalize();   // settle every remaining open entry
///
/// Each step appends an open entry to every vector, evaluates each distinct
/// leaf label once against the new label set, then runs one operator module
/// per inner node bottom-up. Modules only ever overwrite open entries;
/// settled entries are locked for good. finalize() resolves all remaining
/// open entries against whole-trace semantics and marks the engine terminal.
///
/// An engine is single-writer. Copies are independent snapshots, so
/// concurrent readers can copy between steps and move them across threads.
class Engine {
 public:
  explicit Engine(FormulaTree tree, int origin = 0);
  explicit Engine(const Formula& f, int origin = 0);

  /// Ingests the next label set and runs one full module pass.
  /// Throws AlreadyFinalized after finalize().
  void step(const LabelSet& labels);

  /// Batch catch-up: one step per label set, identical results to calling
  /// step() in a loop.
  void step_all(const std::vector<LabelSet>& labels);

  /// Terminal evaluation: every remaining open entry of every node is set
  /// from whole-trace satisfaction of the node's formula on the suffix.
  /// Throws EmptyTrace before the first step, AlreadyFinalized on repeats.
  void finalize();

  /// Re-runs the module pass at the current update time without a new step.
  /// A no-op by construction (modules only fill open entries); exposed so
  /// that tests can pin that property down. Counts evaluations as usual.
  void rerun_modules();

  bool started() const { return !trace_.empty(); }
  bool finalized() const { return finalized_; }

  /// Current update time t'. Throws EmptyTrace before the first step.
  int current_time() const { return trace_.last_time(); }

  int origin() const { return trace_.origin(); }
  const FormulaTree& tree() const { return tree_; }
  const Trace& trace() const { return trace_; }

  /// One vector per node, node order = tree order; all vectors have one
  /// entry per ingested step.
  const std::vector<std::vector<TrackingValue>>& vectors() const { return vectors_; }
  const std::vector<TrackingValue>& vector_at(std::size_t node) const {
    return vectors_.at(node);
  }

  /// Value of node's entry for suffix start t (absolute time).
  TrackingValue value(std::size_t node, int t) const;

  /// Evaluations spent so far. The unit is one window position examined by
  /// an inner-node module (one joint read of its child vectors at that
  /// position); leaf modules read the trace, not child vectors, and count 0.
  std::uint64_t evaluation_count() const { return eval_count_; }

  /// 2^height * steps^2, the guaranteed ceiling for evaluation_count().
  std::uint64_t evaluation_bound() const;

  /// External dump format:
  /// {formula, nodes:[{index, formula_text, type, parent}], time, vectors,
  ///  finalized, eval_count}; time is null before the first step.
  nlohmann::json dump() const;

 private:
  void module_pass();
  void run_module(std::size_t index);
  void set_entry(std::size_t node, int t, TrackingValue value);
  TrackingValue child_value(std::size_t node, std::size_t child_slot, int t) const;

  FormulaTree tree_;
  std::vector<std::vector<TrackingValue>> vectors_;
  Trace trace_;
  bool finalized_ = false;
  std::uint64_t eval_count_ = 0;
};

}  // namespace lpt
