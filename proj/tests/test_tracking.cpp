#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <limits>
#include <thread>

#include "generators.hpp"
#include "lpt/oracle.hpp"
#include "lpt/signature.hpp"
#include "lpt/tracking.hpp"

using namespace lpt;

namespace {

const LabelSet kNone{};
const LabelSet kA{"a"};
const LabelSet kB{"b"};
const LabelSet kKeyA{"keyA"};
const LabelSet kKeyB{"keyB"};

using Vec = std::vector<TrackingValue>;

Engine key_engine() { return Engine(parse("F keyA & F keyB")); }

}  // namespace

TEST_CASE("tree build: two-key formula in level order") {
  const FormulaTree tree(parse("F keyA & F keyB"));
  REQUIRE(tree.size() == 5);
  CHECK(tree.node(0).type == Kind::And);
  CHECK(tree.node(1).formula == parse("F keyA"));
  CHECK(tree.node(2).formula == parse("F keyB"));
  CHECK(tree.node(3).formula == Formula::atom("keyA"));
  CHECK(tree.node(4).formula == Formula::atom("keyB"));
  CHECK(tree.node(0).children == std::vector<std::size_t>{1, 2});
  CHECK(tree.node(1).children == std::vector<std::size_t>{3});
  CHECK(tree.node(3).parent == 1);
  CHECK_FALSE(tree.node(0).parent.has_value());
  CHECK(tree.height() == 2);
}

TEST_CASE("tree build: single atom") {
  const FormulaTree tree(Formula::atom("a"));
  CHECK(tree.size() == 1);
  CHECK(tree.height() == 0);
}

TEST_CASE("tree build: response pattern in level order") {
  const FormulaTree tree(parse("G(a -> X b)"));
  REQUIRE(tree.size() == 5);
  CHECK(tree.node(0).type == Kind::Globally);
  CHECK(tree.node(1).type == Kind::Implies);
  CHECK(tree.node(2).formula == Formula::atom("a"));
  CHECK(tree.node(3).formula == parse("X b"));
  CHECK(tree.node(4).formula == Formula::atom("b"));
  CHECK(tree.height() == 3);

  // Every non-root node's formula is an argument of its parent's formula,
  // and children sit at larger indices (level order).
  for (std::size_t i = 1; i < tree.size(); ++i) {
    const TreeNode& node = tree.node(i);
    REQUIRE(node.parent.has_value());
    CHECK(*node.parent < i);
    const auto args = arguments(tree.node(*node.parent).formula);
    bool found = false;
    for (const Formula& arg : args) found = found || arg == node.formula;
    CHECK(found);
  }
}

TEST_CASE("tree build: repeated atoms stay distinct nodes") {
  const FormulaTree tree(parse("F a & G a"));
  REQUIRE(tree.size() == 5);
  CHECK(tree.node(3).formula == Formula::atom("a"));
  CHECK(tree.node(4).formula == Formula::atom("a"));
  CHECK(tree.node(3).formula.id() != tree.node(4).formula.id());
}

TEST_CASE("init: empty vectors, nothing counted") {
  const Engine engine = key_engine();
  CHECK(engine.vectors().size() == 5);
  for (const auto& vec : engine.vectors()) CHECK(vec.empty());
  CHECK_FALSE(engine.started());
  CHECK(engine.evaluation_count() == 0);
  CHECK_THROWS_AS(engine.current_time(), EmptyTrace);
}

TEST_CASE("two-key walkthrough values after three steps") {
  Engine engine = key_engine();
  engine.step(kNone);
  engine.step(kNone);
  engine.step(kKeyA);
  CHECK(engine.current_time() == 2);
  CHECK(engine.vector_at(0) == Vec{-1, -1, -1});
  CHECK(engine.vector_at(1) == Vec{1, 1, 1});
  CHECK(engine.vector_at(2) == Vec{-1, -1, -1});
  CHECK(engine.vector_at(3) == Vec{0, 0, 1});
  CHECK(engine.vector_at(4) == Vec{0, 0, 0});
}

TEST_CASE("single atom tracks its own label") {
  Engine engine{Formula::atom("a")};
  engine.step(kA);
  CHECK(engine.vector_at(0) == Vec{1});
}

TEST_CASE("shared atoms share the step evaluation, not the vector") {
  Engine engine{parse("F a & G a")};
  engine.step(kA);
  engine.step(kNone);
  CHECK(engine.vector_at(3) == Vec{1, 0});
  CHECK(engine.vector_at(4) == Vec{1, 0});
}

TEST_CASE("true literal settles immediately") {
  Engine engine{parse("true U a")};
  engine.step(kNone);
  engine.step(kNone);
  CHECK(engine.vector_at(1) == Vec{1, 1});   // the true leaf
  CHECK(engine.vector_at(0) == Vec{-1, -1});  // witness still open
}

TEST_CASE("response pattern matches the bounded continuation oracle at every update") {
  const Vocabulary vocab({"a", "b"});
  Engine engine{parse("G(a -> X b)")};
  const std::vector<LabelSet> steps{kA, kB, kNone};
  for (const LabelSet& labels : steps) {
    engine.step(labels);
    for (std::size_t node = 0; node < engine.tree().size(); ++node) {
      for (int t = 0; t <= engine.current_time(); ++t) {
        const Verdict expected = status_under_continuations(
            engine.tree().node(node).formula, engine.trace(), t, vocab, 4);
        const TrackingValue got = engine.value(node, t);
        CAPTURE(node);
        CAPTURE(t);
        CAPTURE(engine.current_time());
        if (got == kSettledTrue) CHECK(expected == Verdict::True);
        if (got == kSettledFalse) CHECK(expected == Verdict::False);
        // This particular formula never leaves a determinate entry open.
        if (got == kOpen) CHECK(expected == Verdict::Open);
      }
    }
  }
}

TEST_CASE("finalize settles the two-key rollout against the whole trace") {
  Engine engine = key_engine();
  engine.step(kNone);
  engine.step(kNone);
  engine.step(kKeyA);
  engine.finalize();
  CHECK(engine.finalized());
  CHECK(engine.vector_at(0) == Vec{0, 0, 0});
  CHECK(engine.vector_at(1) == Vec{1, 1, 1});
  CHECK(engine.vector_at(2) == Vec{0, 0, 0});  // keyB never arrived
}

TEST_CASE("finalize is value-neutral when everything is settled") {
  Engine engine{Formula::atom("a")};
  engine.step(kA);
  const auto before = engine.vectors();
  engine.finalize();
  CHECK(engine.vectors() == before);
}

TEST_CASE("until vs weak until differ only at the terminal update") {
  SUBCASE("both-false settles both pre-finalize") {
    Engine until{parse("a U b")};
    Engine weak{parse("a W b")};
    until.step(kNone);
    weak.step(kNone);
    CHECK(until.vector_at(0) == Vec{0});
    CHECK(weak.vector_at(0) == Vec{0});
  }
  SUBCASE("lhs-only trace diverges at finalize") {
    Engine until{parse("a U b")};
    Engine weak{parse("a W b")};
    until.step(kA);
    weak.step(kA);
    CHECK(until.vector_at(0) == Vec{-1});
    CHECK(weak.vector_at(0) == Vec{-1});
    until.finalize();
    weak.finalize();
    CHECK(until.vector_at(0) == Vec{0});
    CHECK(weak.vector_at(0) == Vec{1});
  }
}

TEST_CASE("release vs strong release differ only at the terminal update") {
  Engine release{parse("a R b")};
  Engine strong{parse("a M b")};
  for (Engine* engine : {&release, &strong}) {
    engine->step(kB);
    engine->step(kB);
  }
  CHECK(release.vector_at(0) == Vec{-1, -1});
  CHECK(strong.vector_at(0) == Vec{-1, -1});
  release.finalize();
  strong.finalize();
  CHECK(release.vector_at(0) == Vec{1, 1});
  CHECK(strong.vector_at(0) == Vec{0, 0});
}

TEST_CASE("next settles one step late and the tail at finalize") {
  Engine engine{parse("X a")};
  engine.step(kNone);
  CHECK(engine.vector_at(0) == Vec{-1});
  engine.step(kA);
  CHECK(engine.vector_at(0) == Vec{1, -1});
  engine.step(kNone);
  CHECK(engine.vector_at(0) == Vec{1, 0, -1});
  engine.finalize();
  CHECK(engine.vector_at(0) == Vec{1, 0, 0});  // X needs a next step
}

TEST_CASE("module settlement goldens on settled children") {
  SUBCASE("negation flips settled child entries") {
    Engine engine{parse("!a")};
    engine.step(kA);
    engine.step(kNone);
    CHECK(engine.vector_at(0) == Vec{0, 1});
  }
  SUBCASE("disjunction") {
    Engine engine{parse("a | b")};
    engine.step(kA);
    engine.step(kNone);
    CHECK(engine.vector_at(0) == Vec{1, 0});
  }
  SUBCASE("implication") {
    Engine engine{parse("a -> b")};
    engine.step(kA);              // 1 -> 0
    engine.step(LabelSet{"a", "b"});  // 1 -> 1
    engine.step(kNone);           // 0 -> 0
    CHECK(engine.vector_at(0) == Vec{0, 1, 1});
  }
  SUBCASE("globally settles the whole prefix on a false child") {
    Engine engine{parse("G a")};
    engine.step(kA);
    engine.step(kA);
    CHECK(engine.vector_at(0) == Vec{-1, -1});
    engine.step(kNone);
    CHECK(engine.vector_at(0) == Vec{0, 0, 0});
  }
  SUBCASE("until settles its window on a witness") {
    Engine engine{parse("a U b")};
    engine.step(kA);
    CHECK(engine.vector_at(0) == Vec{-1});
    engine.step(LabelSet{"a", "b"});
    CHECK(engine.vector_at(0) == Vec{1, 1});
  }
  SUBCASE("strong release settles its window when both sides hold") {
    Engine engine{parse("a M b")};
    engine.step(kB);
    CHECK(engine.vector_at(0) == Vec{-1});
    engine.step(LabelSet{"a", "b"});
    CHECK(engine.vector_at(0) == Vec{1, 1});
  }
  SUBCASE("release settles false on a broken rhs") {
    Engine engine{parse("a R b")};
    engine.step(kNone);
    CHECK(engine.vector_at(0) == Vec{0});
  }
}

TEST_CASE("no propositional deduction across open children") {
  // Both children of the conjunction are open, so the node stays open even
  // though the combination can never hold; whole-trace evaluation knows
  // better, and finalize applies it.
  Engine engine{parse("F a & !F a")};
  engine.step(kNone);
  CHECK(engine.vector_at(0) == Vec{-1});
  CHECK_FALSE(holds(parse("F a & !F a"), engine.trace(), 0));
  engine.finalize();
  CHECK(engine.vector_at(0) == Vec{0});
}

TEST_CASE("step and finalize guard their preconditions") {
  Engine engine = key_engine();
  CHECK_THROWS_AS(engine.finalize(), EmptyTrace);
  CHECK_THROWS_AS(engine.rerun_modules(), EmptyTrace);
  engine.step(kNone);
  engine.finalize();
  CHECK_THROWS_AS(engine.step(kNone), AlreadyFinalized);
  CHECK_THROWS_AS(engine.finalize(), AlreadyFinalized);
  CHECK_THROWS_AS(engine.rerun_modules(), AlreadyFinalized);
}

TEST_CASE("module pass is idempotent at a fixed update time") {
  app::Rng rng(2025);
  const Vocabulary vocab({"a", "b"});
  for (int i = 0; i < 100; ++i) {
    Engine engine{app::random_formula(rng, 4, vocab.labels())};
    const int length = 1 + static_cast<int>(rng() % 5);
    for (int s = 0; s < length; ++s) {
      engine.step(app::random_label_set(rng, vocab));
      const auto snapshot = engine.vectors();
      engine.rerun_modules();
      CHECK(engine.vectors() == snapshot);
    }
  }
}

TEST_CASE("settled entries never move again") {
  app::Rng rng(404);
  const Vocabulary vocab({"a", "b"});
  for (int i = 0; i < 100; ++i) {
    Engine engine{app::random_formula(rng, 4, vocab.labels())};
    std::vector<Vec> previous;
    const int length = 1 + static_cast<int>(rng() % 6);
    for (int s = 0; s < length; ++s) {
      engine.step(app::random_label_set(rng, vocab));
      for (std::size_t node = 0; node < previous.size(); ++node) {
        for (std::size_t k = 0; k < previous[node].size(); ++k) {
          if (previous[node][k] != kOpen) {
            CHECK(engine.vectors()[node][k] == previous[node][k]);
          }
        }
      }
      previous = engine.vectors();
    }
    engine.finalize();
    for (std::size_t node = 0; node < previous.size(); ++node) {
      for (std::size_t k = 0; k < previous[node].size(); ++k) {
        if (previous[node][k] != kOpen) {
          CHECK(engine.vectors()[node][k] == previous[node][k]);
        }
        CHECK(engine.vectors()[node][k] != kOpen);
      }
    }
  }
}

TEST_CASE("every leaf is settled at the newest step") {
  app::Rng rng(11);
  const Vocabulary vocab({"a", "b", "c"});
  for (int i = 0; i < 50; ++i) {
    Engine engine{app::random_formula(rng, 3, vocab.labels())};
    const int length = 1 + static_cast<int>(rng() % 4);
    for (int s = 0; s < length; ++s) {
      engine.step(app::random_label_set(rng, vocab));
      for (std::size_t node = 0; node < engine.tree().size(); ++node) {
        if (is_leaf(engine.tree().node(node).type)) {
          CHECK(engine.value(node, engine.current_time()) != kOpen);
        }
      }
    }
  }
}

TEST_CASE("evaluation counting") {
  SUBCASE("a lone atom reads no child vectors") {
    Engine engine{Formula::atom("a")};
    engine.step(kA);
    CHECK(engine.evaluation_count() == 0);
    CHECK(engine.evaluation_bound() == 1);
  }
  SUBCASE("two-key tree over three steps") {
    Engine engine = key_engine();
    engine.step(kNone);
    engine.step(kNone);
    engine.step(kKeyA);
    // Three inner nodes scan windows of 1, 2, 3 positions.
    CHECK(engine.evaluation_count() == 18);
    CHECK(engine.evaluation_bound() == 36);
  }
  SUBCASE("random runs stay under 2^height * len^2") {
    app::Rng rng(900);
    const Vocabulary vocab({"a", "b", "c"});
    for (int i = 0; i < 300; ++i) {
      Engine engine{app::random_formula(rng, 4, vocab.labels())};
      const int length = 1 + static_cast<int>(rng() % 8);
      for (int s = 0; s < length; ++s) engine.step(app::random_label_set(rng, vocab));
      CHECK(engine.evaluation_count() <= engine.evaluation_bound());
    }
  }
}

TEST_CASE("dump carries the external format") {
  Engine engine = key_engine();
  const nlohmann::json before = engine.dump();
  CHECK(before["time"].is_null());
  CHECK(before["finalized"] == false);

  engine.step(kNone);
  engine.step(kKeyA);
  const nlohmann::json dump = engine.dump();
  CHECK(dump["formula"] == "F keyA & F keyB");
  CHECK(dump["time"] == 1);
  CHECK(dump["eval_count"].is_number());
  REQUIRE(dump["nodes"].size() == 5);
  CHECK(dump["nodes"][0]["parent"].is_null());
  CHECK(dump["nodes"][1]["parent"] == 0);
  CHECK(dump["nodes"][1]["type"] == "Eventually");
  CHECK(dump["nodes"][3]["formula_text"] == "keyA");
  REQUIRE(dump["vectors"].size() == 5);
  CHECK(dump["vectors"][3] == nlohmann::json::array({0, 1}));
}

TEST_CASE("value() guards its range") {
  Engine engine{Formula::atom("a")};
  engine.step(kA);
  CHECK_THROWS_AS(engine.value(0, 1), IndexError);
  CHECK_THROWS_AS(engine.value(0, -1), IndexError);
}

TEST_CASE("step_all matches a loop of single steps") {
  app::Rng rng(6);
  const Vocabulary vocab({"a", "b"});
  for (int i = 0; i < 30; ++i) {
    const Formula f = app::random_formula(rng, 3, vocab.labels());
    std::vector<LabelSet> steps;
    const int length = 1 + static_cast<int>(rng() % 5);
    for (int s = 0; s < length; ++s) steps.push_back(app::random_label_set(rng, vocab));

    Engine batch(f);
    batch.step_all(steps);
    Engine loop(f);
    for (const LabelSet& labels : steps) loop.step(labels);
    CHECK(batch.vectors() == loop.vectors());
    CHECK(batch.evaluation_count() == loop.evaluation_count());
  }
}

TEST_CASE("evaluation bound saturates instead of overflowing") {
  Formula deep = Formula::atom("a");
  for (int i = 0; i < 70; ++i) deep = Formula::next(deep);
  Engine engine(deep);
  engine.step(kA);
  CHECK(engine.evaluation_bound() == std::numeric_limits<std::uint64_t>::max());
  CHECK(engine.evaluation_count() <= engine.evaluation_bound());
}

TEST_CASE("parser refuses pathological nesting") {
  const std::string deep(5000, '(');
  CHECK_THROWS_AS(parse(deep + "a" + std::string(5000, ')')), SyntaxError);

  std::string ops;
  for (int i = 0; i < 5000; ++i) ops += "X ";
  CHECK_THROWS_AS(parse(ops + "a"), SyntaxError);

  std::string shallow;
  for (int i = 0; i < 4000; ++i) shallow += "F ";
  CHECK(parse(shallow + "a").height() == 4000);
}

TEST_CASE("independent engines over a shared formula run in parallel") {
  const Formula shared = parse("G(a -> X b) & F b");
  const std::vector<LabelSet> steps{kA, kB, kNone, kA, kB};

  Engine reference(shared);
  for (const LabelSet& labels : steps) reference.step(labels);

  std::vector<std::vector<std::vector<TrackingValue>>> results(4);
  std::vector<std::thread> workers;
  workers.reserve(results.size());
  for (std::size_t i = 0; i < results.size(); ++i) {
    workers.emplace_back([&, i] {
      Engine engine(shared);
      for (const LabelSet& labels : steps) engine.step(labels);
      results[i] = engine.vectors();
    });
  }
  for (std::thread& worker : workers) worker.join();
  for (const auto& vectors : results) CHECK(vectors == reference.vectors());
}

TEST_CASE("a nonzero time origin shifts every index") {
  Engine engine{parse("F a"), 5};
  engine.step(kNone);
  engine.step(kA);
  CHECK(engine.origin() == 5);
  CHECK(engine.current_time() == 6);
  CHECK(engine.value(0, 5) == kSettledTrue);
  CHECK(engine.value(1, 6) == kSettledTrue);
  CHECK_THROWS_AS(engine.value(0, 0), IndexError);
  engine.finalize();
  CHECK(engine.vector_at(0) == Vec{1, 1});
}
