#include "lpt/signature.hpp"

#include <algorithm>

namespace lpt {

std::vector<TrackingValue> merge_runs(const std::vector<TrackingValue>& values) {
  std::vector<TrackingValue> merged;
  for (const TrackingValue v : values) {
    if (merged.empty() || merged.back() != v) merged.push_back(v);
  }
  return merged;
}

Signature make_signature(const Engine& engine) {
  Signature signature;
  signature.per_node.reserve(engine.tree().size());
  for (const auto& vec : engine.vectors()) {
    signature.per_node.push_back(merge_runs(vec));
  }
  return signature;
}

namespace {

void check_shapes(const Signature& a, const Signature& b) {
  if (a.per_node.size() != b.per_node.size()) {
    throw ShapeMismatch("signatures compare node-wise; got " +
                        std::to_string(a.per_node.size()) + " vs " +
                        std::to_string(b.per_node.size()) + " nodes");
  }
}

std::size_t edit_distance(const std::vector<TrackingValue>& a,
                          const std::vector<TrackingValue>& b) {
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  std::vector<std::size_t> row(m + 1);
  for (std::size_t j = 0; j <= m; ++j) row[j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    std::size_t diagonal = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t substitution = diagonal + (a[i - 1] == b[j - 1] ? 0 : 1);
      diagonal = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, substitution});
    }
  }
  return row[m];
}

}  // namespace

bool signatures_equal(const Signature& a, const Signature& b) {
  check_shapes(a, b);
  return a.per_node == b.per_node;
}

std::size_t signature_distance(const Signature& a, const Signature& b) {
  check_shapes(a, b);
  std::size_t total = 0;
  for (std::size_t i = 0; i < a.per_node.size(); ++i) {
    total += edit_distance(a.per_node[i], b.per_node[i]);
  }
  return total;
}

nlohmann::json signature_json(const Signature& signature) {
  return nlohmann::json(signature.per_node);
}

std::string signature_text(const Signature& signature) {
  return signature_json(signature).dump();
}

}  // namespace lpt
