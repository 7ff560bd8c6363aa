#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>

#include "generators.hpp"
#include "lpt/formula.hpp"
#include "lpt/trace.hpp"

using namespace lpt;

namespace {

Formula fa() { return Formula::atom("a"); }
Formula fb() { return Formula::atom("b"); }
Formula fc() { return Formula::atom("c"); }

}  // namespace

TEST_CASE("parses the two-key conjunction") {
  const Formula f = parse("F keyA & F keyB");
  const Formula expected = Formula::conjunction(Formula::eventually(Formula::atom("keyA")),
                                                Formula::eventually(Formula::atom("keyB")));
  CHECK(f == expected);
}

TEST_CASE("parses the response pattern") {
  const Formula f = parse("G(a -> X b)");
  const Formula expected =
      Formula::globally(Formula::implication(fa(), Formula::next(fb())));
  CHECK(f == expected);
}

TEST_CASE("parses a bare atom") {
  const Formula f = parse("a");
  CHECK(f.kind() == Kind::Atom);
  CHECK(f.atom_name() == "a");
  CHECK(f.height() == 0);
  CHECK(f.node_count() == 1);
}

TEST_CASE("temporal operators are right-associative") {
  CHECK(parse("a U b U c") == parse("a U (b U c)"));
  CHECK(parse("a U b U c") == Formula::until(fa(), Formula::until(fb(), fc())));
  CHECK(parse("a -> b -> c") == parse("a -> (b -> c)"));
}

TEST_CASE("precedence ladder goldens") {
  // temporal binds tighter than & which binds tighter than | and ->
  CHECK(parse("a & b U c") == Formula::conjunction(fa(), Formula::until(fb(), fc())));
  CHECK(parse("a U b & c") == Formula::conjunction(Formula::until(fa(), fb()), fc()));
  CHECK(parse("a | b & c") == Formula::disjunction(fa(), Formula::conjunction(fb(), fc())));
  CHECK(parse("a & b | c") == Formula::disjunction(Formula::conjunction(fa(), fb()), fc()));
  CHECK(parse("a -> b | c") == Formula::implication(fa(), Formula::disjunction(fb(), fc())));
  CHECK(parse("a | b -> c") == Formula::implication(Formula::disjunction(fa(), fb()), fc()));
  CHECK(parse("a & b W c") == Formula::conjunction(fa(), Formula::weak_until(fb(), fc())));
  CHECK(parse("a R b & c") == Formula::conjunction(Formula::release(fa(), fb()), fc()));
  CHECK(parse("a M b | c") ==
        Formula::disjunction(Formula::strong_release(fa(), fb()), fc()));
  CHECK(parse("a -> b U c") == Formula::implication(fa(), Formula::until(fb(), fc())));
  // unary binds tighter than any binary
  CHECK(parse("!a U b") == Formula::until(Formula::negation(fa()), fb()));
  CHECK(parse("F a & b") == Formula::conjunction(Formula::eventually(fa()), fb()));
  CHECK(parse("X a U G b") ==
        Formula::until(Formula::next(fa()), Formula::globally(fb())));
  CHECK(parse("!X a") == Formula::negation(Formula::next(fa())));
  // grouping wins
  CHECK(parse("(a & b) U c") == Formula::until(Formula::conjunction(fa(), fb()), fc()));
  CHECK(parse("G(a) & b") == Formula::conjunction(Formula::globally(fa()), fb()));
  // same-level chains
  CHECK(parse("a & b & c") == Formula::conjunction(Formula::conjunction(fa(), fb()), fc()));
  CHECK(parse("a | b | c") == Formula::disjunction(Formula::disjunction(fa(), fb()), fc()));
  CHECK(parse("a U b R c") == Formula::until(fa(), Formula::release(fb(), fc())));
}

TEST_CASE("true literal is a first-class node") {
  CHECK(parse("true").kind() == Kind::TrueLit);
  CHECK(parse("!true") == Formula::negation(Formula::true_lit()));
  CHECK(parse("true U a") == Formula::until(Formula::true_lit(), fa()));
}

TEST_CASE("format goldens") {
  CHECK(format(fa()) == "a");
  CHECK(format(Formula::conjunction(Formula::eventually(Formula::atom("keyA")),
                                    Formula::eventually(Formula::atom("keyB")))) ==
        "F keyA & F keyB");
  CHECK(format(parse("a U b U c")) == "a U b U c");
  CHECK(format(parse("(a U b) U c")) == "(a U b) U c");
  CHECK(format(parse("G(a -> X b)")) == "G(a -> X b)");
  CHECK(format(parse("!(a & b)")) == "!(a & b)");
  CHECK(format(parse("a & (b | c)")) == "a & (b | c)");
  CHECK(format(parse("true")) == "true");
}

TEST_CASE("round trip: parse(format(f)) == f") {
  app::Rng rng(20240817);
  const std::vector<std::string> atoms{"a", "b", "c", "keyA"};
  for (int i = 0; i < 500; ++i) {
    const Formula f = app::random_formula(rng, 5, atoms);
    CAPTURE(format(f));
    CHECK(parse(format(f)) == f);
  }
}

TEST_CASE("arguments returns the immediate children") {
  const Formula keys = parse("F keyA & F keyB");
  const auto args = arguments(keys);
  REQUIRE(args.size() == 2);
  CHECK(args[0] == parse("F keyA"));
  CHECK(args[1] == parse("F keyB"));

  CHECK(arguments(Formula::atom("keyA")).empty());

  const auto unary_args = arguments(parse("G(a -> X b)"));
  REQUIRE(unary_args.size() == 1);
  CHECK(unary_args[0] == parse("a -> X b"));
}

TEST_CASE("arguments length always equals arity") {
  app::Rng rng(7);
  const std::vector<std::string> atoms{"a", "b"};
  for (int i = 0; i < 200; ++i) {
    const Formula f = app::random_formula(rng, 4, atoms);
    CHECK(arguments(f).size() == static_cast<std::size_t>(arity(f.kind())));
  }
}

TEST_CASE("syntax errors carry a position and expectation") {
  CHECK_THROWS_AS(parse("a &"), SyntaxError);
  try {
    parse("a &");
  } catch (const SyntaxError& err) {
    CHECK(err.line == 1);
    CHECK(err.column == 4);
    CHECK(std::string(err.what()).find("expected") != std::string::npos);
  }
  CHECK_THROWS_AS(parse(""), SyntaxError);
  CHECK_THROWS_AS(parse("(a"), SyntaxError);
  CHECK_THROWS_AS(parse("a b"), SyntaxError);
  CHECK_THROWS_AS(parse("U a"), SyntaxError);
  CHECK_THROWS_AS(parse("a -"), SyntaxError);
  CHECK_THROWS_AS(parse("a @ b"), SyntaxError);
}

TEST_CASE("vocabulary-checked parsing rejects unknown atoms") {
  const Vocabulary vocab({"a", "b"});
  CHECK(parse("a U b", vocab) == parse("a U b"));
  CHECK_THROWS_AS(parse("a U zoo", vocab), UnknownAtom);
  try {
    parse("zoo", vocab);
  } catch (const UnknownAtom& err) {
    CHECK(err.name == "zoo");
  }
}

TEST_CASE("make enforces arity") {
  CHECK_THROWS_AS(Formula::make(Kind::And, {fa()}), ArityError);
  CHECK_THROWS_AS(Formula::make(Kind::Not, {fa(), fb()}), ArityError);
  CHECK_THROWS_AS(Formula::make(Kind::Atom, {}), ArityError);  // empty name
  CHECK_THROWS_AS(Formula::make(Kind::TrueLit, {}, "oops"), ArityError);
}

TEST_CASE("comments and whitespace are ignored") {
  CHECK(parse("a # trailing comment") == fa());
  CHECK(parse("# leading\n a &\n b") == parse("a & b"));
}

TEST_CASE("specification files load with comments stripped") {
  const std::string path = "formula_test_spec.tmp";
  {
    std::ofstream out(path);
    out << "# the two-key task\n";
    out << "F keyA &\n";
    out << "F keyB   \n";
  }
  CHECK(load_formula_file(path) == parse("F keyA & F keyB"));

  {
    std::ofstream out(path);
    out << "# nothing but comments\n";
  }
  CHECK_THROWS_AS(load_formula_file(path), FormatError);
  std::remove(path.c_str());
}

TEST_CASE("atom names: sorted unique atoms of a formula") {
  CHECK(atom_names(parse("b U (a & b) | F c")) == std::vector<std::string>{"a", "b", "c"});
  CHECK(atom_names(parse("true")).empty());
}
