#pragma once

#include <functional>
#include <vector>

#include "growth/tree.hpp"

namespace growth::testing {

// Independent oracle: materializes every composition tree with n leaves
// rooted at v and takes the best leaf sum. No shared code with the DP
// evaluator beyond the tree type itself.
inline std::vector<CompositionTree> all_trees(const ReplacementSystem& system, FunctionId v,
                                              std::size_t n) {
  std::vector<CompositionTree> out;
  if (n == 1) {
    out.push_back(CompositionTree::leaf(v));
    return out;
  }
  auto [u, w] = system.rule[v];
  for (std::size_t m = 1; m < n; ++m) {
    for (const CompositionTree& left : all_trees(system, u, n - m)) {
      for (const CompositionTree& right : all_trees(system, w, m)) {
        CompositionTree t;
        std::int32_t l = t.splice(left);
        std::int32_t r = t.splice(right);
        t.root = t.add_node(v, l, r);
        out.push_back(std::move(t));
      }
    }
  }
  return out;
}

inline Rational brute_force_v(const ReplacementSystem& system, FunctionId v, std::size_t n) {
  Rational best;
  bool first = true;
  for (const CompositionTree& t : all_trees(system, v, n)) {
    Rational val = t.value(system);
    if (first || val > best) {
      best = std::move(val);
      first = false;
    }
  }
  return best;
}

inline Rational brute_force_g(const ReplacementSystem& system, std::size_t n) {
  Rational best = brute_force_v(system, 0, n);
  for (FunctionId v = 1; v < system.size(); ++v) {
    Rational val = brute_force_v(system, v, n);
    if (val > best) best = val;
  }
  return best;
}

}  // namespace growth::testing
