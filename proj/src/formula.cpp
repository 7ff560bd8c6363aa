#include "lpt/formula.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <sstream>
#include <utility>

#include "lpt/trace.hpp"

namespace lpt {

int arity(Kind kind) {
  switch (kind) {
    case Kind::TrueLit:
    case Kind::Atom:
      return 0;
    case Kind::Not:
    case Kind::Next:
    case Kind::Eventually:
    case Kind::Globally:
      return 1;
    default:
      return 2;
  }
}

const char* kind_name(Kind kind) {
  switch (kind) {
    case Kind::TrueLit: return "TrueLit";
    case Kind::Atom: return "Atom";
    case Kind::Not: return "Not";
    case Kind::Next: return "Next";
    case Kind::Eventually: return "Eventually";
    case Kind::Globally: return "Globally";
    case Kind::And: return "And";
    case Kind::Or: return "Or";
    case Kind::Implies: return "Implies";
    case Kind::Until: return "Until";
    case Kind::WeakUntil: return "WeakUntil";
    case Kind::Release: return "Release";
    case Kind::StrongRelease: return "StrongRelease";
  }
  return "?";
}

bool is_leaf(Kind kind) { return arity(kind) == 0; }

Formula Formula::make(Kind kind, std::vector<Formula> children, std::string atom_name) {
  const int expected = arity(kind);
  if (static_cast<int>(children.size()) != expected) {
    std::ostringstream msg;
    msg << kind_name(kind) << " takes " << expected << " subformula(s), got "
        << children.size();
    throw ArityError(msg.str());
  }
  if (kind == Kind::Atom && atom_name.empty()) {
    throw ArityError("Atom requires a nonempty name");
  }
  if (kind != Kind::Atom && !atom_name.empty()) {
    throw ArityError("only Atom nodes carry a name");
  }

  int height = 0;
  std::size_t size = 1;
  for (const Formula& child : children) {
    height = std::max(height, child.height() + 1);
    size += child.node_count();
  }
  auto node = std::make_shared<Node>(
      Node{kind, std::move(atom_name), std::move(children), height, size});
  return Formula(std::move(node));
}

Formula Formula::true_lit() { return make(Kind::TrueLit, {}); }
Formula Formula::atom(std::string name) { return make(Kind::Atom, {}, std::move(name)); }
Formula Formula::negation(Formula f) { return make(Kind::Not, {std::move(f)}); }
Formula Formula::next(Formula f) { return make(Kind::Next, {std::move(f)}); }
Formula Formula::eventually(Formula f) { return make(Kind::Eventually, {std::move(f)}); }
Formula Formula::globally(Formula f) { return make(Kind::Globally, {std::move(f)}); }
Formula Formula::conjunction(Formula a, Formula b) {
  return make(Kind::And, {std::move(a), std::move(b)});
}
Formula Formula::disjunction(Formula a, Formula b) {
  return make(Kind::Or, {std::move(a), std::move(b)});
}
Formula Formula::implication(Formula a, Formula b) {
  return make(Kind::Implies, {std::move(a), std::move(b)});
}
Formula Formula::until(Formula a, Formula b) {
  return make(Kind::Until, {std::move(a), std::move(b)});
}
Formula Formula::weak_until(Formula a, Formula b) {
  return make(Kind::WeakUntil, {std::move(a), std::move(b)});
}
Formula Formula::release(Formula a, Formula b) {
  return make(Kind::Release, {std::move(a), std::move(b)});
}
Formula Formula::strong_release(Formula a, Formula b) {
  return make(Kind::StrongRelease, {std::move(a), std::move(b)});
}

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  if (node_->kind != other.node_->kind) return false;
  if (node_->atom_name != other.node_->atom_name) return false;
  if (node_->children.size() != other.node_->children.size()) return false;
  for (std::size_t i = 0; i < node_->children.size(); ++i) {
    if (node_->children[i] != other.node_->children[i]) return false;
  }
  return true;
}

std::vector<Formula> arguments(const Formula& f) { return f.children(); }

namespace {

void collect_atoms(const Formula& f, std::vector<std::string>& out) {
  if (f.kind() == Kind::Atom) {
    out.push_back(f.atom_name());
    return;
  }
  for (const Formula& child : f.children()) collect_atoms(child, out);
}

}  // namespace

std::vector<std::string> atom_names(const Formula& f) {
  std::vector<std::string> names;
  collect_atoms(f, names);
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  return names;
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace {

enum class Tok : std::uint8_t {
  End,
  LParen,
  RParen,
  Bang,
  Amp,
  Pipe,
  Arrow,
  OpX,
  OpF,
  OpG,
  OpU,
  OpW,
  OpR,
  OpM,
  True,
  Ident,
};

const char* tok_text(Tok t) {
  switch (t) {
    case Tok::End: return "end of input";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Bang: return "'!'";
    case Tok::Amp: return "'&'";
    case Tok::Pipe: return "'|'";
    case Tok::Arrow: return "'->'";
    case Tok::OpX: return "'X'";
    case Tok::OpF: return "'F'";
    case Tok::OpG: return "'G'";
    case Tok::OpU: return "'U'";
    case Tok::OpW: return "'W'";
    case Tok::OpR: return "'R'";
    case Tok::OpM: return "'M'";
    case Tok::True: return "'true'";
    case Tok::Ident: return "atom";
  }
  return "?";
}

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_blank();
    const std::size_t start = pos_;
    if (pos_ >= text_.size()) return {Tok::End, "", start};

    const char c = text_[pos_];
    switch (c) {
      case '(': ++pos_; return {Tok::LParen, "(", start};
      case ')': ++pos_; return {Tok::RParen, ")", start};
      case '!': ++pos_; return {Tok::Bang, "!", start};
      case '&': ++pos_; return {Tok::Amp, "&", start};
      case '|': ++pos_; return {Tok::Pipe, "|", start};
      case '-':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
          pos_ += 2;
          return {Tok::Arrow, "->", start};
        }
        fail(start, "'->'");
      default:
        break;
    }

    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos_;
      while (end < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_')) {
        ++end;
      }
      std::string word(text_.substr(pos_, end - pos_));
      pos_ = end;
      if (word == "true") return {Tok::True, std::move(word), start};
      if (word.size() == 1) {
        switch (word[0]) {
          case 'X': return {Tok::OpX, std::move(word), start};
          case 'F': return {Tok::OpF, std::move(word), start};
          case 'G': return {Tok::OpG, std::move(word), start};
          case 'U': return {Tok::OpU, std::move(word), start};
          case 'W': return {Tok::OpW, std::move(word), start};
          case 'R': return {Tok::OpR, std::move(word), start};
          case 'M': return {Tok::OpM, std::move(word), start};
          default: break;
        }
      }
      return {Tok::Ident, std::move(word), start};
    }

    fail(start, "a formula token");
  }

  [[noreturn]] void fail(std::size_t offset, const std::string& expected) const {
    auto [line, column] = line_col(offset);
    std::ostringstream msg;
    msg << "syntax error at " << line << ":" << column << ": expected " << expected;
    if (offset < text_.size()) {
      msg << ", found '" << text_[offset] << "'";
    } else {
      msg << ", found end of input";
    }
    throw SyntaxError(msg.str(), offset, line, column, expected);
  }

  std::pair<int, int> line_col(std::size_t offset) const {
    int line = 1;
    int column = 1;
    for (std::size_t i = 0; i < offset && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    return {line, column};
  }

 private:
  void skip_blank() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

// Grammar, weakest binding first; see the precedence ladder in formula.hpp.
//
//   implies := or ('->' implies)?
//   or      := and ('|' and)*
//   and     := temporal ('&' temporal)*
//   temporal:= unary (('U'|'W'|'R'|'M') temporal)?
//   unary   := ('!'|'X'|'F'|'G') unary | primary
//   primary := 'true' | atom | '(' implies ')'
class Parser {
 public:
  Parser(std::string_view text, const Vocabulary* vocabulary)
      : lexer_(text), vocabulary_(vocabulary) {
    advance();
  }

  Formula run() {
    Formula f = parse_implies();
    expect(Tok::End, "end of input");
    return f;
  }

 private:
  static constexpr int kMaxDepth = 4096;

  struct DepthGuard {
    explicit DepthGuard(Parser& parser) : parser(parser) {
      if (++parser.depth_ > kMaxDepth) {
        const auto [line, column] = parser.lexer_.line_col(parser.current_.offset);
        throw SyntaxError("formula nesting exceeds " + std::to_string(kMaxDepth) + " levels",
                          parser.current_.offset, line, column, "shallower nesting");
      }
    }
    ~DepthGuard() { --parser.depth_; }
    Parser& parser;
  };

  Formula parse_implies() {
    DepthGuard guard(*this);
    Formula lhs = parse_or();
    if (current_.kind == Tok::Arrow) {
      advance();
      return Formula::implication(std::move(lhs), parse_implies());
    }
    return lhs;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (current_.kind == Tok::Pipe) {
      advance();
      f = Formula::disjunction(std::move(f), parse_and());
    }
    return f;
  }

  Formula parse_and() {
    Formula f = parse_temporal();
    while (current_.kind == Tok::Amp) {
      advance();
      f = Formula::conjunction(std::move(f), parse_temporal());
    }
    return f;
  }

  Formula parse_temporal() {
    Formula lhs = parse_unary();
    switch (current_.kind) {
      case Tok::OpU:
        advance();
        return Formula::until(std::move(lhs), parse_temporal());
      case Tok::OpW:
        advance();
        return Formula::weak_until(std::move(lhs), parse_temporal());
      case Tok::OpR:
        advance();
        return Formula::release(std::move(lhs), parse_temporal());
      case Tok::OpM:
        advance();
        return Formula::strong_release(std::move(lhs), parse_temporal());
      default:
        return lhs;
    }
  }

  Formula parse_unary() {
    DepthGuard guard(*this);
    switch (current_.kind) {
      case Tok::Bang:
        advance();
        return Formula::negation(parse_unary());
      case Tok::OpX:
        advance();
        return Formula::next(parse_unary());
      case Tok::OpF:
        advance();
        return Formula::eventually(parse_unary());
      case Tok::OpG:
        advance();
        return Formula::globally(parse_unary());
      default:
        return parse_primary();
    }
  }

  Formula parse_primary() {
    switch (current_.kind) {
      case Tok::True:
        advance();
        return Formula::true_lit();
      case Tok::Ident: {
        std::string name = current_.text;
        if (vocabulary_ != nullptr && !vocabulary_->contains(name)) {
          throw UnknownAtom("unknown atom '" + name + "': not in the declared vocabulary",
                            name);
        }
        advance();
        return Formula::atom(std::move(name));
      }
      case Tok::LParen: {
        advance();
        Formula f = parse_implies();
        expect(Tok::RParen, "')'");
        return f;
      }
      default:
        lexer_.fail(current_.offset, "a formula (atom, 'true', '!', 'X', 'F', 'G' or '(')");
    }
  }

  void expect(Tok kind, const std::string& what) {
    if (current_.kind != kind) {
      lexer_.fail(current_.offset, what + std::string(", not ") + tok_text(current_.kind));
    }
    advance();
  }

  void advance() { current_ = lexer_.next(); }

  Lexer lexer_;
  const Vocabulary* vocabulary_;
  Token current_{Tok::End, "", 0};
  int depth_ = 0;
};

}  // namespace

Formula parse(std::string_view text) { return Parser(text, nullptr).run(); }

Formula parse(std::string_view text, const Vocabulary& vocabulary) {
  return Parser(text, &vocabulary).run();
}

// ---------------------------------------------------------------------------
// Formatting
// ---------------------------------------------------------------------------

namespace {

// Binding strength, higher binds tighter. Leaves sit above every operator.
int binding(Kind kind) {
  switch (kind) {
    case Kind::Implies: return 0;
    case Kind::Or: return 1;
    case Kind::And: return 2;
    case Kind::Until:
    case Kind::WeakUntil:
    case Kind::Release:
    case Kind::StrongRelease: return 3;
    case Kind::Not:
    case Kind::Next:
    case Kind::Eventually:
    case Kind::Globally: return 4;
    case Kind::TrueLit:
    case Kind::Atom: return 5;
  }
  return 5;
}

const char* op_symbol(Kind kind) {
  switch (kind) {
    case Kind::Not: return "!";
    case Kind::Next: return "X";
    case Kind::Eventually: return "F";
    case Kind::Globally: return "G";
    case Kind::And: return "&";
    case Kind::Or: return "|";
    case Kind::Implies: return "->";
    case Kind::Until: return "U";
    case Kind::WeakUntil: return "W";
    case Kind::Release: return "R";
    case Kind::StrongRelease: return "M";
    default: return "";
  }
}

bool right_associative(Kind kind) {
  return binding(kind) == 3 || kind == Kind::Implies;
}

void render(const Formula& f, std::string& out) {
  const Kind kind = f.kind();
  switch (arity(kind)) {
    case 0:
      out += (kind == Kind::TrueLit) ? "true" : f.atom_name();
      return;
    case 1: {
      const Formula& child = f.child(0);
      const bool parens = binding(child.kind()) < binding(kind);
      out += op_symbol(kind);
      if (parens) {
        out += '(';
        render(child, out);
        out += ')';
      } else {
        if (kind != Kind::Not) out += ' ';
        render(child, out);
      }
      return;
    }
    default: {
      const Formula& lhs = f.child(0);
      const Formula& rhs = f.child(1);
      const int level = binding(kind);
      // A child at the same level re-associates on re-parse, so the side
      // away from the operator's associativity gets parenthesized.
      const bool lhs_parens =
          binding(lhs.kind()) < level || (binding(lhs.kind()) == level && right_associative(kind));
      const bool rhs_parens =
          binding(rhs.kind()) < level || (binding(rhs.kind()) == level && !right_associative(kind));
      if (lhs_parens) {
        out += '(';
        render(lhs, out);
        out += ')';
      } else {
        render(lhs, out);
      }
      out += ' ';
      out += op_symbol(kind);
      out += ' ';
      if (rhs_parens) {
        out += '(';
        render(rhs, out);
        out += ')';
      } else {
        render(rhs, out);
      }
      return;
    }
  }
}

}  // namespace

std::string format(const Formula& f) {
  std::string out;
  render(f, out);
  return out;
}

// ---------------------------------------------------------------------------
// Specification files
// ---------------------------------------------------------------------------

namespace {

std::string read_spec_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw FormatError("cannot open specification file: " + path);
  }
  std::ostringstream collected;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    // Comment lines become blank lines so error positions keep matching the
    // file.
    if (first == std::string::npos || line[first] == '#') {
      collected << '\n';
      continue;
    }
    collected << line << '\n';
  }
  std::string text = collected.str();
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
    throw FormatError("specification file holds no formula: " + path);
  }
  return text;
}

}  // namespace

Formula load_formula_file(const std::string& path) { return parse(read_spec_text(path)); }

Formula load_formula_file(const std::string& path, const Vocabulary& vocabulary) {
  return parse(read_spec_text(path), vocabulary);
}

}  // namespace lpt
