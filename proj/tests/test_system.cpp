#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>

#include "growth/system.hpp"
#include "support/fixtures.hpp"

using namespace growth;
namespace gt = growth::testing;

namespace {

bool has_code(const std::vector<Violation>& vs, const std::string& code) {
  return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) { return v.code == code; });
}

}  // namespace

TEST_CASE("validate accepts the fixtures") {
  for (const auto& system : gt::all_fixtures()) {
    CHECK(validate(system).empty());
  }
}

TEST_CASE("validate flags broken systems") {
  ReplacementSystem bad = gt::rot4();
  bad.rule[2].second = 9;
  CHECK(has_code(validate(bad), "unknown-rule-target"));

  ReplacementSystem empty;
  CHECK(has_code(validate(empty), "empty-system"));

  ReplacementSystem dup = gt::chain();
  dup.functions[1].name = "a";
  CHECK(has_code(validate(dup), "duplicate-name"));

  ReplacementSystem unnamed = gt::s1();
  unnamed.functions[0].name = "";
  CHECK(has_code(validate(unnamed), "empty-name"));

  ReplacementSystem norule = gt::chain();
  norule.rule.pop_back();
  CHECK(has_code(validate(norule), "missing-rule"));
}

TEST_CASE("dependency graph of rot4") {
  Digraph g = dependency_graph(gt::rot4());
  // b1->{b2,b3}, b2->{b3,b4}, b3->{b4,b1}, b4->{b1,b2}
  CHECK(g.adj[0] == std::vector<FunctionId>{1, 2});
  CHECK(g.adj[1] == std::vector<FunctionId>{2, 3});
  CHECK(g.adj[2] == std::vector<FunctionId>{0, 3});
  CHECK(g.adj[3] == std::vector<FunctionId>{0, 1});
}

TEST_CASE("dependency graph keeps self-loops and collapses duplicates") {
  Digraph g1 = dependency_graph(gt::s1());
  CHECK(g1.adj[0] == std::vector<FunctionId>{0});

  Digraph g2 = dependency_graph(gt::chain());
  CHECK(g2.adj[0] == std::vector<FunctionId>{1});
  CHECK(g2.adj[1] == std::vector<FunctionId>{1});
}

TEST_CASE("condensation of chain") {
  Condensation c = condensation(gt::chain());
  REQUIRE(c.components.size() == 2);
  CHECK(c.components[0] == std::vector<FunctionId>{0});
  CHECK(c.components[1] == std::vector<FunctionId>{1});
  CHECK(c.single[0]);        // {a}: no self-loop
  CHECK_FALSE(c.single[1]);  // {b}: self-loop
  CHECK(c.edges == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}});
}

TEST_CASE("condensation of rot4 and s1") {
  Condensation c4 = condensation(gt::rot4());
  REQUIRE(c4.components.size() == 1);
  CHECK(c4.components[0] == std::vector<FunctionId>{0, 1, 2, 3});
  CHECK_FALSE(c4.single[0]);

  Condensation c1 = condensation(gt::s1());
  REQUIRE(c1.components.size() == 1);
  CHECK_FALSE(c1.single[0]);  // self-loop means not single
}

TEST_CASE("value bounds") {
  auto [lo4, hi4] = value_bounds(gt::rot4());
  CHECK(lo4 == Rational(1));
  CHECK(hi4 == Rational(4));

  auto [lo1, hi1] = value_bounds(gt::s1());
  CHECK(lo1 == Rational(5));
  CHECK(hi1 == Rational(5));

  auto [lom, him] = value_bounds(gt::mixed2());
  CHECK(lom == Rational(-1, 2));
  CHECK(him == Rational(7, 3));
}

TEST_CASE("condensation is acyclic and minimal components have cycles") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 300; ++i) {
    ReplacementSystem system = gt::random_system(rng);
    Condensation c = condensation(system);

    // Components partition V.
    std::size_t total = 0;
    for (const auto& comp : c.components) total += comp.size();
    CHECK(total == system.size());

    // Edges only point from earlier to later components (topological order),
    // so a topological sort exists.
    for (auto [from, to] : c.edges) {
      CHECK(from < to);
      CHECK(from != to);
    }

    // A minimal component (no outgoing edge) is never single.
    for (std::size_t i2 = 0; i2 < c.components.size(); ++i2) {
      bool minimal = std::none_of(c.edges.begin(), c.edges.end(),
                                  [&](auto e) { return e.first == i2; });
      if (minimal) CHECK_FALSE(c.single[i2]);
    }
  }
}
