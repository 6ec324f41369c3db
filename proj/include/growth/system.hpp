#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "growth/rational.hpp"
#include "growth/violation.hpp"

namespace growth {

// Functions are referenced by their 0-based ordinal in the system's list.
// Names are surface syntax for files and reports only.
using FunctionId = std::uint32_t;

struct FunctionDef {
  std::string name;
  Rational c;  // starting value, v(1)
};

// A finite collection of functions together with the replacement rule
// M(v) = (u, w). The pair is ordered: first is the left child, second the
// right child of every composition-tree node labeled v.
struct ReplacementSystem {
  std::vector<FunctionDef> functions;
  std::vector<std::pair<FunctionId, FunctionId>> rule;

  std::size_t size() const { return functions.size(); }
  const Rational& c(FunctionId v) const { return functions[v].c; }
  const std::string& name(FunctionId v) const { return functions[v].name; }
  FunctionId left(FunctionId v) const { return rule[v].first; }
  FunctionId right(FunctionId v) const { return rule[v].second; }

  friend bool operator==(const ReplacementSystem& a, const ReplacementSystem& b) {
    if (a.size() != b.size() || a.rule != b.rule) return false;
    for (std::size_t v = 0; v < a.size(); ++v) {
      if (a.functions[v].name != b.functions[v].name || a.functions[v].c != b.functions[v].c) {
        return false;
      }
    }
    return true;
  }
};

// Checks every structural invariant; an empty result means the system is
// valid. Violation codes: "empty-system", "empty-name", "duplicate-name",
// "missing-rule", "unknown-rule-target".
std::vector<Violation> validate(const ReplacementSystem& system);

// Throws std::invalid_argument listing the violation codes.
void require_valid(const ReplacementSystem& system);

struct Digraph {
  std::vector<std::vector<FunctionId>> adj;  // per-vertex sorted, deduplicated

  std::size_t size() const { return adj.size(); }
  bool has_edge(FunctionId from, FunctionId to) const;
};

// Edge v -> u for every u mentioned in M(v); duplicates collapsed,
// self-loops retained.
Digraph dependency_graph(const ReplacementSystem& system);

// Strongly connected components of the dependency graph. Components are
// listed in topological order (U before V whenever U >= V), members
// ascending. An edge (U, V) means U >= V in the partial order. A component
// is "single" iff it has one vertex and that vertex has no self-loop.
struct Condensation {
  std::vector<std::vector<FunctionId>> components;
  std::vector<std::size_t> component_of;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<bool> single;
};

Condensation condensation(const ReplacementSystem& system);

// (min starting value, max starting value); these bracket the growth rate.
std::pair<Rational, Rational> value_bounds(const ReplacementSystem& system);

}  // namespace growth
