#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "growth/evaluator.hpp"
#include "support/brute_force.hpp"
#include "support/fixtures.hpp"

using namespace growth;
namespace gt = growth::testing;

TEST_CASE("eval_v matches exhaustive tree enumeration") {
  // |V| <= 3, n <= 8: every composition tree is materialized and summed.
  std::mt19937_64 rng(11);
  std::vector<ReplacementSystem> systems = {gt::s1(), gt::chain(), gt::grammar2(), gt::mixed2()};
  for (int i = 0; i < 30; ++i) systems.push_back(gt::random_system(rng, 3));
  for (const auto& system : systems) {
    for (FunctionId v = 0; v < system.size(); ++v) {
      for (std::size_t n = 1; n <= 8; ++n) {
        CAPTURE(v);
        CAPTURE(n);
        CHECK(eval_v(system, v, n) == gt::brute_force_v(system, v, n));
      }
    }
  }
}

TEST_CASE("eval_v on rot4 matches frozen oracle values") {
  ReplacementSystem system = gt::rot4();
  CHECK(eval_v(system, 0, 3) == Rational(10));  // b1
  CHECK(eval_v(system, 3, 3) == Rational(8));   // b4
}

TEST_CASE("single self-loop grows linearly") {
  ReplacementSystem system = gt::s1();
  for (std::size_t n = 1; n <= 12; ++n) {
    CHECK(eval_v(system, 0, n) == Rational(5) * Rational(static_cast<long>(n)));
  }
}

TEST_CASE("rot4 g table reproduces the published values") {
  std::vector<long> expected = {4, 7, 10, 14, 18, 21, 25, 29, 32, 36, 40, 43, 47, 51, 54, 58, 62, 65};
  std::vector<Rational> table = g_table(gt::rot4(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CAPTURE(i);
    CHECK(table[i] == Rational(expected[i]));
  }
  CHECK(eval_g(gt::rot4(), 1) == Rational(4));
  CHECK(eval_g(gt::rot4(), 6) == Rational(21));
  CHECK(eval_g(gt::rot4(), 18) == Rational(65));
}

TEST_CASE("g tables of small fixtures") {
  std::vector<Rational> s1 = g_table(gt::s1(), 3);
  CHECK(s1 == std::vector<Rational>{Rational(5), Rational(10), Rational(15)});
  std::vector<Rational> r1 = g_table(gt::remark_family(1), 1);
  CHECK(r1 == std::vector<Rational>{Rational(1)});
}

TEST_CASE("best_tree golden witnesses") {
  ReplacementSystem system = gt::rot4();

  CompositionTree t1 = best_tree(system, 1);
  CHECK(t1.leaf_count() == 1);
  CHECK(t1.nodes[t1.root].label == 3);  // b4, the largest starting value
  CHECK(t1.value(system) == Rational(4));

  // n = 3: root b1, left subtree b2 -> (b3, b4), right leaf b3.
  CompositionTree t3 = best_tree(system, 3);
  CHECK(t3.value(system) == Rational(10));
  REQUIRE(t3.leaf_count() == 3);
  const auto& root = t3.nodes[t3.root];
  CHECK(root.label == 0);
  CHECK(t3.nodes[root.right].label == 2);
  CHECK(t3.is_leaf(root.right));
  const auto& left = t3.nodes[root.left];
  CHECK(left.label == 1);
  CHECK(t3.nodes[left.left].label == 2);
  CHECK(t3.nodes[left.right].label == 3);
  CHECK(t3.leaf_labels() == std::vector<FunctionId>{2, 3, 2});

  CompositionTree s2 = best_tree(gt::s1(), 2);
  CHECK(s2.leaf_count() == 2);
  CHECK(s2.value(gt::s1()) == Rational(10));
}

TEST_CASE("witness trees are consistent with eval_g") {
  for (const auto& system : gt::all_fixtures()) {
    EvalTable table = eval_table(system, 50);
    for (std::size_t n = 1; n <= 50; ++n) {
      CompositionTree t = best_tree(system, n);
      CHECK(validate_tree(system, t).empty());
      CHECK(t.leaf_count() == n);
      Rational g = table.value[n - 1][0];
      for (FunctionId v = 1; v < system.size(); ++v) {
        if (table.value[n - 1][v] > g) g = table.value[n - 1][v];
      }
      CHECK(t.value(system) == g);
    }
  }
}

TEST_CASE("g(n) stays between n*min and n*max") {
  for (const auto& system : gt::all_fixtures()) {
    auto [lo, hi] = value_bounds(system);
    std::vector<Rational> table = g_table(system, 200);
    for (std::size_t n = 1; n <= 200; ++n) {
      Rational nn(static_cast<long>(n));
      CHECK(nn * lo <= table[n - 1]);
      CHECK(table[n - 1] <= nn * hi);
    }
  }
}

TEST_CASE("n = 0 is rejected") {
  CHECK_THROWS_AS(eval_v(gt::s1(), 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(eval_g(gt::s1(), 0), std::invalid_argument);
  CHECK_THROWS_AS(g_table(gt::s1(), 0), std::invalid_argument);
}

TEST_CASE("tree text and dot exports") {
  ReplacementSystem system = gt::rot4();
  CompositionTree t = best_tree(system, 3);
  std::string text = tree_text(system, t);
  CHECK(text == "b1\n  b2\n    b3 = 3\n    b4 = 4\n  b3 = 3\n");
  std::string dot = tree_dot(system, t);
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("b4 = 4") != std::string::npos);
}
