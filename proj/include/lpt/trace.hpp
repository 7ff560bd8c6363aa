#pragma once

#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lpt/errors.hpp"

namespace lpt {

/// The label alphabet P: an ordered set of unique, nonempty label strings.
class Vocabulary {
 public:
  Vocabulary() = default;

  /// Keeps the given order. Throws Error on duplicates or empty labels.
  explicit Vocabulary(std::vector<std::string> labels);

  bool contains(std::string_view label) const;
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t size() const { return labels_.size(); }

  bool operator==(const Vocabulary& other) const { return labels_ == other.labels_; }
  bool operator!=(const Vocabulary& other) const { return !(*this == other); }

 private:
  std::vector<std::string> labels_;
};

/// One trace step: the set of labels L_t that hold at a time point.
/// Duplicates are collapsed silently; members are kept sorted.
class LabelSet {
 public:
  LabelSet() = default;
  LabelSet(std::initializer_list<std::string> labels);
  explicit LabelSet(std::vector<std::string> labels);

  bool contains(std::string_view label) const;
  void insert(std::string label);
  bool empty() const { return members_.empty(); }
  std::size_t size() const { return members_.size(); }
  const std::vector<std::string>& members() const { return members_; }

  bool operator==(const LabelSet& other) const { return members_ == other.members_; }
  bool operator!=(const LabelSet& other) const { return !(*this == other); }

 private:
  std::vector<std::string> members_;
};

class TraceView;

/// A finite trace: label sets indexed by absolute time T0, T0+1, ...
/// Steps are append-only while a rollout is live.
class Trace {
 public:
  Trace() = default;
  explicit Trace(std::vector<LabelSet> steps, int origin = 0);

  void append(LabelSet step) { steps_.push_back(std::move(step)); }

  /// Removes the newest step. Live rollouts never shrink; this exists for
  /// the continuation enumerator to rewind its working copy.
  void drop_last();

  bool empty() const { return steps_.empty(); }
  std::size_t size() const { return steps_.size(); }
  int origin() const { return origin_; }

  /// Last populated time index T0 + size - 1. Throws EmptyTrace when empty.
  int last_time() const;

  /// Label set at absolute time t. Throws IndexError outside [T0, last].
  const LabelSet& at(int t) const;

  const std::vector<LabelSet>& steps() const { return steps_; }

  /// View over (L_t, ..., L_last). Throws IndexError outside [T0, last].
  TraceView suffix(int t) const;

  bool operator==(const Trace& other) const {
    return origin_ == other.origin_ && steps_ == other.steps_;
  }
  bool operator!=(const Trace& other) const { return !(*this == other); }

 private:
  std::vector<LabelSet> steps_;
  int origin_ = 0;
};

/// Non-owning suffix view of a trace. Valid as long as the trace outlives it
/// and is not reallocated by appends.
class TraceView {
 public:
  TraceView(const Trace& trace, int start) : trace_(&trace), start_(start) {}

  std::size_t size() const;
  int start() const { return start_; }
  const LabelSet& at(int t) const { return trace_->at(t); }

  /// Copies the viewed steps into a standalone trace with origin = start.
  Trace to_trace() const;

  bool operator==(const TraceView& other) const { return to_trace() == other.to_trace(); }
  bool operator==(const Trace& other) const { return to_trace() == other; }

 private:
  const Trace* trace_;
  int start_;
};

/// Result of reading a trace file; the vocabulary is present only when the
/// file carried a header line.
struct TraceFile {
  Trace trace;
  std::optional<Vocabulary> vocabulary;
};

/// Reads the JSON Lines trace format:
///
///   {"vocabulary": ["keyA", "keyB"]}     <- optional header, first line only
///   []
///   ["keyA"]
///   ["keyA", "keyB"]
///
/// One JSON array of label strings per step; blank lines are skipped; a file
/// with no step records raises FormatError. When a vocabulary is declared
/// (header or argument), labels outside it raise UnknownLabel. A vocabulary
/// passed as an argument wins over a header.
TraceFile load_trace(std::istream& in);
TraceFile load_trace(std::istream& in, const Vocabulary& vocabulary);
TraceFile load_trace_file(const std::string& path);
TraceFile load_trace_file(const std::string& path, const Vocabulary& vocabulary);

/// Writes the same format load_trace reads; emits a header when a vocabulary
/// is given. load(emit(t)) == t.
void emit_trace(const Trace& trace, std::ostream& out,
                const std::optional<Vocabulary>& vocabulary = std::nullopt);

}  // namespace lpt
