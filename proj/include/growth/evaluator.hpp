#pragma once

#include <vector>

#include "growth/tree.hpp"

namespace growth {

// Dynamic program for v(n) = max_{1<=m<=n-1} u(n-m) + w(m) with v(1) = c_v.
// This is the trusted-slow ground truth the fast algorithms are checked
// against; it makes no attempt to be clever.
//
// One table serves eval_v, eval_g, g_table and best_tree. Winning split
// points are stored so optimal trees can be reconstructed. Ties are broken
// deterministically: smallest function id at the root, then smallest m
// (the size handed to the right child) at every split.
struct EvalTable {
  std::size_t n = 0;
  // value[k-1][v] = v(k); split[k-1][v] = winning m for k >= 2, else 0.
  std::vector<std::vector<Rational>> value;
  std::vector<std::vector<std::uint32_t>> split;
};

EvalTable eval_table(const ReplacementSystem& system, std::size_t n);

Rational eval_v(const ReplacementSystem& system, FunctionId v, std::size_t n);
Rational eval_g(const ReplacementSystem& system, std::size_t n);
std::vector<Rational> g_table(const ReplacementSystem& system, std::size_t n_max);

// Optimal tree with n leaves whose value equals eval_g(system, n).
CompositionTree best_tree(const ReplacementSystem& system, std::size_t n);

}  // namespace growth
