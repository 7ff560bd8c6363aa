#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lpt/errors.hpp"

namespace lpt {

class Vocabulary;

/// Top-level connective of a formula node.
enum class Kind : std::uint8_t {
  TrueLit,
  Atom,
  Not,
  Next,
  Eventually,
  Globally,
  And,
  Or,
  Implies,
  Until,
  WeakUntil,
  Release,
  StrongRelease,
};

/// Number of immediate subformulas the connective takes (0, 1 or 2).
int arity(Kind kind);

/// Stable spelling used in reports and dumps ("TrueLit", "Atom", "Until", ...).
const char* kind_name(Kind kind);

bool is_leaf(Kind kind);

/// Immutable finite-trace LTL formula with value semantics. Copies share the
/// underlying nodes, so passing formulas around is cheap and thread-safe.
///
/// Operator surface syntax and binding strength, strongest first:
///
///   1. grouping (...)
///   2. unary    !  X  F  G
///   3. temporal U  W  R  M        (right-associative)
///   4. and      &                 (left-associative)
///   5. or       |                 (left-associative)
///   6. implies  ->                (right-associative)
///
/// Atoms are identifiers [A-Za-z_][A-Za-z0-9_]* excluding the reserved words
/// X F G U W R M true. The literal `true` is kept as its own node kind; there
/// is no `false` literal (write `!true`).
class Formula {
 public:
  static Formula true_lit();
  static Formula atom(std::string name);
  static Formula negation(Formula f);
  static Formula next(Formula f);
  static Formula eventually(Formula f);
  static Formula globally(Formula f);
  static Formula conjunction(Formula lhs, Formula rhs);
  static Formula disjunction(Formula lhs, Formula rhs);
  static Formula implication(Formula lhs, Formula rhs);
  static Formula until(Formula lhs, Formula rhs);
  static Formula weak_until(Formula lhs, Formula rhs);
  static Formula release(Formula lhs, Formula rhs);
  static Formula strong_release(Formula lhs, Formula rhs);

  /// Generic constructor. Throws ArityError when the child count does not
  /// match the connective, or when an Atom has an empty name.
  static Formula make(Kind kind, std::vector<Formula> children, std::string atom_name = {});

  Kind kind() const { return node_->kind; }

  /// Name of an Atom node; empty for every other kind.
  const std::string& atom_name() const { return node_->atom_name; }

  const std::vector<Formula>& children() const { return node_->children; }
  const Formula& child(std::size_t index) const { return node_->children.at(index); }

  /// Depth of the node hierarchy with this node at level 0. A leaf has
  /// height 0.
  int height() const { return node_->height; }

  /// Total number of nodes, including this one.
  std::size_t node_count() const { return node_->size; }

  /// Structural equality.
  bool operator==(const Formula& other) const;
  bool operator!=(const Formula& other) const { return !(*this == other); }

  /// Identity of the underlying node; distinct occurrences of equal
  /// subformulas have distinct identities unless they were copied.
  const void* id() const { return node_.get(); }

 private:
  struct Node {
    Kind kind;
    std::string atom_name;
    std::vector<Formula> children;
    int height;
    std::size_t size;
  };

  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

/// Parses a specification string into a formula. When a vocabulary is given,
/// atoms outside of it raise UnknownAtom. Raises SyntaxError on malformed
/// input. `#` starts a comment that runs to the end of the line.
Formula parse(std::string_view text);
Formula parse(std::string_view text, const Vocabulary& vocabulary);

/// Renders a formula with minimal parentheses; parse(format(f)) == f.
std::string format(const Formula& f);

/// Immediate subformulas of the top-level connective, left to right.
std::vector<Formula> arguments(const Formula& f);

/// Sorted, de-duplicated names of all atoms occurring in the formula.
std::vector<std::string> atom_names(const Formula& f);

/// Reads a specification file: UTF-8 text holding one formula, possibly
/// spread over several lines; lines whose first non-blank character is `#`
/// are comments; trailing whitespace is ignored.
Formula load_formula_file(const std::string& path);
Formula load_formula_file(const std::string& path, const Vocabulary& vocabulary);

}  // namespace lpt
