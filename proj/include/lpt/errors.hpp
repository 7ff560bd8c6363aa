#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lpt {

/// Base class for every error raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed specification text. Carries the byte offset and 1-based
/// line/column of the offending token plus a description of what the
/// parser expected there.
struct SyntaxError : Error {
  SyntaxError(const std::string& message, std::size_t offset, int line, int column,
              std::string expected_tokens = {})
      : Error(message), offset(offset), line(line), column(column),
        expected(std::move(expected_tokens)) {}

  std::size_t offset;
  int line;
  int column;
  std::string expected;
};

/// An atomic proposition that is not part of the declared vocabulary.
struct UnknownAtom : Error {
  UnknownAtom(const std::string& message, std::string atom)
      : Error(message), name(std::move(atom)) {}

  std::string name;
};

/// Operator applied to the wrong number of subformulas.
struct ArityError : Error {
  using Error::Error;
};

/// Malformed record in a trace or specification file.
struct FormatError : Error {
  FormatError(const std::string& message, int line_number = -1)
      : Error(message), line(line_number) {}

  int line;
};

/// Trace label not present in the declared vocabulary.
struct UnknownLabel : Error {
  UnknownLabel(const std::string& message, std::string bad_label, int line_number = -1)
      : Error(message), label(std::move(bad_label)), line(line_number) {}

  std::string label;
  int line;
};

/// Time index outside the valid range of a trace.
struct IndexError : Error {
  using Error::Error;
};

struct AlreadyFinalized : Error {
  using Error::Error;
};

struct EmptyTrace : Error {
  using Error::Error;
};

/// Signatures built from trees with different node counts.
struct ShapeMismatch : Error {
  using Error::Error;
};

/// Continuation enumeration would exceed the configured cap.
struct BudgetExceeded : Error {
  using Error::Error;
};

/// A documented internal invariant failed to hold. Seeing this means a bug
/// in the engine, never bad user input.
struct InvariantViolation : Error {
  using Error::Error;
};

}  // namespace lpt
