#include "lpt/trace.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

namespace lpt {

Vocabulary::Vocabulary(std::vector<std::string> labels) : labels_(std::move(labels)) {
  std::unordered_set<std::string_view> seen;
  for (const std::string& label : labels_) {
    if (label.empty()) throw Error("vocabulary labels must be nonempty");
    if (!seen.insert(label).second) {
      throw Error("duplicate vocabulary label: " + label);
    }
  }
}

bool Vocabulary::contains(std::string_view label) const {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

LabelSet::LabelSet(std::initializer_list<std::string> labels)
    : LabelSet(std::vector<std::string>(labels)) {}

LabelSet::LabelSet(std::vector<std::string> labels) : members_(std::move(labels)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool LabelSet::contains(std::string_view label) const {
  return std::binary_search(members_.begin(), members_.end(), label);
}

void LabelSet::insert(std::string label) {
  auto pos = std::lower_bound(members_.begin(), members_.end(), label);
  if (pos == members_.end() || *pos != label) members_.insert(pos, std::move(label));
}

Trace::Trace(std::vector<LabelSet> steps, int origin)
    : steps_(std::move(steps)), origin_(origin) {}

void Trace::drop_last() {
  if (steps_.empty()) throw EmptyTrace("cannot drop a step from an empty trace");
  steps_.pop_back();
}

int Trace::last_time() const {
  if (steps_.empty()) throw EmptyTrace("trace has no steps");
  return origin_ + static_cast<int>(steps_.size()) - 1;
}

const LabelSet& Trace::at(int t) const {
  if (steps_.empty() || t < origin_ || t > last_time()) {
    std::ostringstream msg;
    msg << "time " << t << " outside trace range";
    if (!steps_.empty()) msg << " [" << origin_ << ", " << last_time() << "]";
    throw IndexError(msg.str());
  }
  return steps_[static_cast<std::size_t>(t - origin_)];
}

TraceView Trace::suffix(int t) const {
  at(t);  // range check
  return TraceView(*this, t);
}

std::size_t TraceView::size() const {
  return trace_->size() - static_cast<std::size_t>(start_ - trace_->origin());
}

Trace TraceView::to_trace() const {
  std::vector<LabelSet> steps;
  steps.reserve(size());
  for (int t = start_; t <= trace_->last_time(); ++t) steps.push_back(trace_->at(t));
  return Trace(std::move(steps), start_);
}

// ---------------------------------------------------------------------------
// Trace files
// ---------------------------------------------------------------------------

namespace {

using nlohmann::json;

LabelSet parse_record(const json& record, int line_number, const Vocabulary* vocabulary) {
  if (!record.is_array()) {
    throw FormatError("trace record must be a JSON array of label strings (line " +
                          std::to_string(line_number) + ")",
                      line_number);
  }
  std::vector<std::string> labels;
  labels.reserve(record.size());
  for (const json& entry : record) {
    if (!entry.is_string()) {
      throw FormatError("trace labels must be strings (line " + std::to_string(line_number) + ")",
                        line_number);
    }
    std::string label = entry.get<std::string>();
    if (vocabulary != nullptr && !vocabulary->contains(label)) {
      throw UnknownLabel("label '" + label + "' not in the declared vocabulary (line " +
                             std::to_string(line_number) + ")",
                         label, line_number);
    }
    labels.push_back(std::move(label));
  }
  return LabelSet(std::move(labels));
}

TraceFile load_trace_impl(std::istream& in, const Vocabulary* forced_vocabulary) {
  TraceFile result;
  const Vocabulary* effective = forced_vocabulary;

  std::string line;
  int line_number = 0;
  bool saw_record = false;
  while (std::getline(in, line)) {
    ++line_number;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    const std::string payload = line.substr(first, last - first + 1);

    json parsed;
    try {
      parsed = json::parse(payload);
    } catch (const json::parse_error& err) {
      throw FormatError("invalid JSON on line " + std::to_string(line_number) + ": " +
                            err.what(),
                        line_number);
    }

    if (parsed.is_object()) {
      if (saw_record || result.vocabulary.has_value()) {
        throw FormatError("vocabulary header must be the first line (line " +
                              std::to_string(line_number) + ")",
                          line_number);
      }
      if (!parsed.contains("vocabulary") || !parsed["vocabulary"].is_array()) {
        throw FormatError("header object must carry a \"vocabulary\" array (line " +
                              std::to_string(line_number) + ")",
                          line_number);
      }
      std::vector<std::string> labels;
      for (const json& entry : parsed["vocabulary"]) {
        if (!entry.is_string()) {
          throw FormatError("vocabulary labels must be strings (line " +
                                std::to_string(line_number) + ")",
                            line_number);
        }
        labels.push_back(entry.get<std::string>());
      }
      result.vocabulary = Vocabulary(std::move(labels));
      if (effective == nullptr) effective = &*result.vocabulary;
      continue;
    }

    result.trace.append(parse_record(parsed, line_number, effective));
    saw_record = true;
  }

  if (!saw_record) throw FormatError("a trace must have at least one step");
  return result;
}

}  // namespace

TraceFile load_trace(std::istream& in) { return load_trace_impl(in, nullptr); }

TraceFile load_trace(std::istream& in, const Vocabulary& vocabulary) {
  return load_trace_impl(in, &vocabulary);
}

TraceFile load_trace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open trace file: " + path);
  return load_trace(in);
}

TraceFile load_trace_file(const std::string& path, const Vocabulary& vocabulary) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open trace file: " + path);
  return load_trace(in, vocabulary);
}

void emit_trace(const Trace& trace, std::ostream& out,
                const std::optional<Vocabulary>& vocabulary) {
  if (vocabulary.has_value()) {
    json header;
    header["vocabulary"] = vocabulary->labels();
    out << header.dump() << '\n';
  }
  for (const LabelSet& step : trace.steps()) {
    out << json(step.members()).dump() << '\n';
  }
}

}  // namespace lpt
