#include "growth/evaluator.hpp"

#include <functional>
#include <stdexcept>

namespace growth {

namespace {

void check_n(std::size_t n) {
  if (n == 0) throw std::invalid_argument("n must be at least 1");
}

}  // namespace

EvalTable eval_table(const ReplacementSystem& system, std::size_t n) {
  check_n(n);
  require_valid(system);
  std::size_t nf = system.size();
  EvalTable t;
  t.n = n;
  t.value.resize(n);
  t.split.resize(n);
  t.value[0].reserve(nf);
  for (FunctionId v = 0; v < nf; ++v) t.value[0].push_back(system.c(v));
  t.split[0].assign(nf, 0);
  for (std::size_t k = 2; k <= n; ++k) {
    auto& row = t.value[k - 1];
    auto& srow = t.split[k - 1];
    row.resize(nf);
    srow.assign(nf, 0);
    for (FunctionId v = 0; v < nf; ++v) {
      auto [u, w] = system.rule[v];
      Rational best = t.value[k - 2][u] + t.value[0][w];  // m = 1
      std::uint32_t best_m = 1;
      for (std::size_t m = 2; m < k; ++m) {
        Rational cand = t.value[k - m - 1][u] + t.value[m - 1][w];
        if (cand > best) {
          best = std::move(cand);
          best_m = static_cast<std::uint32_t>(m);
        }
      }
      row[v] = std::move(best);
      srow[v] = best_m;
    }
  }
  return t;
}

Rational eval_v(const ReplacementSystem& system, FunctionId v, std::size_t n) {
  EvalTable t = eval_table(system, n);
  return t.value[n - 1][v];
}

Rational eval_g(const ReplacementSystem& system, std::size_t n) {
  EvalTable t = eval_table(system, n);
  Rational best = t.value[n - 1][0];
  for (FunctionId v = 1; v < system.size(); ++v) {
    if (t.value[n - 1][v] > best) best = t.value[n - 1][v];
  }
  return best;
}

std::vector<Rational> g_table(const ReplacementSystem& system, std::size_t n_max) {
  EvalTable t = eval_table(system, n_max);
  std::vector<Rational> out;
  out.reserve(n_max);
  for (std::size_t k = 1; k <= n_max; ++k) {
    Rational best = t.value[k - 1][0];
    for (FunctionId v = 1; v < system.size(); ++v) {
      if (t.value[k - 1][v] > best) best = t.value[k - 1][v];
    }
    out.push_back(std::move(best));
  }
  return out;
}

CompositionTree best_tree(const ReplacementSystem& system, std::size_t n) {
  EvalTable t = eval_table(system, n);
  FunctionId root = 0;
  for (FunctionId v = 1; v < system.size(); ++v) {
    if (t.value[n - 1][v] > t.value[n - 1][root]) root = v;
  }
  CompositionTree tree;
  std::function<std::int32_t(FunctionId, std::size_t)> build = [&](FunctionId v,
                                                                   std::size_t k) -> std::int32_t {
    if (k == 1) return tree.add_leaf(v);
    std::uint32_t m = t.split[k - 1][v];
    auto [u, w] = system.rule[v];
    std::int32_t left = build(u, k - m);
    std::int32_t right = build(w, m);
    return tree.add_node(v, left, right);
  };
  tree.root = build(root, n);
  return tree;
}

}  // namespace growth
