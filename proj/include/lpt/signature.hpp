#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "lpt/tracking.hpp"

namespace lpt {

/// Behavioral identifier of a tracked rollout: per node (tree order), the
/// node's tracking vector with runs of equal adjacent values collapsed.
/// Timing is erased, event order preserved.
struct Signature {
  std::vector<std::vector<TrackingValue>> per_node;

  bool operator==(const Signature& other) const { return per_node == other.per_node; }
  bool operator!=(const Signature& other) const { return !(*this == other); }
};

/// Collapses runs of equal adjacent values, e.g. [0,0,1,-1,-1] -> [0,1,-1].
/// Idempotent.
std::vector<TrackingValue> merge_runs(const std::vector<TrackingValue>& values);

/// Signature of the engine's current state. Before the first step every
/// per-node sequence is empty.
Signature make_signature(const Engine& engine);

/// Node-wise structural equality. Throws ShapeMismatch when the signatures
/// come from trees of different node counts.
bool signatures_equal(const Signature& a, const Signature& b);

/// Sum over nodes of the edit distance between merged sequences. Not part
/// of the tracking framework itself; provided as plumbing for novelty-style
/// rewards. Throws ShapeMismatch on different node counts.
std::size_t signature_distance(const Signature& a, const Signature& b);

/// JSON form: array of arrays of -1/0/1 in node order.
nlohmann::json signature_json(const Signature& signature);

/// Compact text form, e.g. "[[-1],[1],[-1],[0,1],[0]]".
std::string signature_text(const Signature& signature);

}  // namespace lpt
