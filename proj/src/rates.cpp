#include "growth/rates.hpp"

#include <algorithm>
#include <functional>

#include "growth/evaluator.hpp"

namespace growth {

namespace {

struct TestRun {
  RateTestResult result;
  std::vector<char> expanded;  // state at detection / saturation
};

// One-shot expansion per variable plus queue-driven propagation. Every
// wave is a reverse reachability pass over the recorded dependencies:
// all reached variables strictly improve, and the wave re-reaching its own
// origin is exactly the positive-cycle condition.
TestRun run_rate_test(const ReplacementSystem& system, const Rational& lambda0) {
  require_valid(system);
  const std::size_t n = system.size();
  std::vector<Rational> z;
  z.reserve(n);
  for (FunctionId v = 0; v < n; ++v) z.push_back(system.c(v) - lambda0);
  std::vector<char> expanded(n, 0);
  std::vector<std::vector<FunctionId>> dependents(n);

  for (;;) {
    std::size_t pick = n;
    for (FunctionId v = 0; v < n; ++v) {
      if (expanded[v]) continue;
      auto [u, w] = system.rule[v];
      if (z[v] < z[u] + z[w]) {
        pick = v;
        break;
      }
    }
    if (pick == n) return {MaxValues{std::move(z)}, std::move(expanded)};

    FunctionId v = static_cast<FunctionId>(pick);
    auto [u, w] = system.rule[v];
    expanded[v] = 1;
    dependents[u].push_back(v);
    if (w != u) dependents[w].push_back(v);

    // Reverse reachability from v over dependents; parents record the
    // justification path for cycle extraction.
    std::vector<std::int64_t> parent(n, -2);
    std::vector<FunctionId> queue{v};
    parent[v] = -1;
    bool cycle = false;
    FunctionId closer = 0;
    for (std::size_t qi = 0; qi < queue.size() && !cycle; ++qi) {
      FunctionId a = queue[qi];
      for (FunctionId x : dependents[a]) {
        if (x == v) {
          cycle = true;
          closer = a;
          break;
        }
        if (parent[x] == -2) {
          parent[x] = a;
          queue.push_back(x);
        }
      }
    }

    if (cycle) {
      // v depends on closer, closer on its parent, and the chain closes at
      // a variable whose rule mentions v.
      std::vector<FunctionId> cyc{v};
      for (FunctionId a = closer; a != v; a = static_cast<FunctionId>(parent[a])) {
        cyc.push_back(a);
      }
      return {PositiveCycle{std::move(cyc)}, std::move(expanded)};
    }

    // No cycle: the affected set is a DAG; recompute sums children-first.
    std::vector<char> in_set(n, 0);
    for (FunctionId x : queue) in_set[x] = 1;
    std::vector<std::uint32_t> pending(n, 0);
    for (FunctionId x : queue) {
      auto [a, b] = system.rule[x];
      if (x == v) continue;  // v's children are outside the wave
      pending[x] = (in_set[a] ? 1u : 0u) + (b != a && in_set[b] ? 1u : 0u);
    }
    std::vector<FunctionId> ready{v};
    for (std::size_t ri = 0; ri < ready.size(); ++ri) {
      FunctionId x = ready[ri];
      auto [a, b] = system.rule[x];
      z[x] = z[a] + z[b];
      for (FunctionId y : dependents[x]) {
        if (in_set[y] && --pending[y] == 0) ready.push_back(y);
      }
    }
  }
}

}  // namespace

RateTestResult rate_test(const ReplacementSystem& system, const Rational& lambda0) {
  return run_rate_test(system, lambda0).result;
}

RateInterval approx_rate(const ReplacementSystem& system, const Rational& epsilon) {
  if (epsilon <= Rational(0)) throw std::invalid_argument("epsilon must be positive");
  auto [lo, hi] = value_bounds(system);
  while (hi - lo > epsilon) {
    Rational mid = (lo + hi) / Rational(2);
    if (std::holds_alternative<PositiveCycle>(rate_test(system, mid))) {
      lo = std::move(mid);
    } else {
      hi = std::move(mid);
    }
  }
  return {std::move(lo), std::move(hi)};
}

namespace {

Rational mediant_toward_hi(const Rational& lo, const Rational& hi, const mpz_class& t) {
  return Rational(lo.num() + t * hi.num(), lo.den() + t * hi.den());
}

Rational mediant_toward_lo(const Rational& lo, const Rational& hi, const mpz_class& t) {
  return Rational(t * lo.num() + hi.num(), t * lo.den() + hi.den());
}

}  // namespace

Rational simplest_rational_in(const Rational& lo, const Rational& hi, bool lo_open,
                              bool hi_open) {
  if (lo > hi || (lo == hi && (lo_open || hi_open))) {
    throw std::invalid_argument("empty interval");
  }
  if (lo == hi) return lo;
  mpz_class fl = lo.floor();
  Rational z = (lo.is_integer() && !lo_open) ? lo : Rational(mpz_class(fl + 1));
  if (z < hi || (z == hi && !hi_open)) return z;
  Rational lo2 = lo - Rational(fl);
  Rational hi2 = hi - Rational(fl);
  if (lo2 == Rational(0)) {
    // interval hugs 0 from above: the simplest member is a unit fraction
    Rational inv = Rational(1) / hi2;
    mpz_class q = inv.is_integer() ? inv.num() : inv.floor() + 1;
    if (hi_open && Rational(mpz_class(1), q) == hi2) q += 1;
    return Rational(fl) + Rational(mpz_class(1), q);
  }
  Rational r = simplest_rational_in(Rational(1) / hi2, Rational(1) / lo2, hi_open, lo_open);
  return Rational(fl) + Rational(1) / r;
}

Rational exact_rate(const ReplacementSystem& system) {
  require_valid(system);

  // Scale the starting values to integers so that rates of reduced
  // pseudo-loops are fractions with denominator at most B, any two of them
  // either equal or at least 1/B^2 apart.
  mpz_class common_den = 1;
  for (FunctionId v = 0; v < system.size(); ++v) {
    mpz_class den = system.c(v).den();
    mpz_lcm(common_den.get_mpz_t(), common_den.get_mpz_t(), den.get_mpz_t());
  }
  Rational scale{common_den};
  ReplacementSystem scaled = system;
  for (FunctionId v = 0; v < system.size(); ++v) {
    scaled.functions[v].c = system.c(v) * scale;
  }

  auto [min_c, max_c] = value_bounds(scaled);
  Rational lo{mpz_class(min_c.floor() - 1)};  // strictly below the rate
  Rational hi = max_c;                        // at or above the rate
  mpz_class bound = reduced_loop_leaf_bound(system);
  Rational eps{mpz_class(1), bound * bound};

  auto below = [&scaled](const Rational& probe) {
    return std::holds_alternative<PositiveCycle>(rate_test(scaled, probe));
  };

  // Stern-Brocot mediant bisection with exponential run acceleration:
  // repeated moves toward the same endpoint double their mediant weight, so
  // a continued-fraction run of length a costs O(log a) rate tests.
  while (hi - lo >= eps) {
    Rational m = mediant_toward_hi(lo, hi, 1);
    if (below(m)) {
      Rational best = std::move(m);
      mpz_class t = 1;
      for (;;) {
        if (hi - best < eps) break;
        t *= 2;
        Rational next = mediant_toward_hi(lo, hi, t);
        if (below(next)) {
          best = std::move(next);
        } else {
          hi = std::move(next);
          break;
        }
      }
      lo = std::move(best);
    } else {
      Rational best = std::move(m);
      mpz_class t = 1;
      for (;;) {
        if (best - lo < eps) break;
        t *= 2;
        Rational next = mediant_toward_lo(lo, hi, t);
        if (!below(next)) {
          best = std::move(next);
        } else {
          lo = std::move(next);
          break;
        }
      }
      hi = std::move(best);
    }
  }

  // The interval (lo, hi] is narrower than 1/B^2 and contains the scaled
  // rate, the unique fraction inside with denominator <= B.
  Rational scaled_rate = simplest_rational_in(lo, hi, /*lo_open=*/true, /*hi_open=*/false);
  return scaled_rate / scale;
}

PrimalCertificate certificate_at_rate(const ReplacementSystem& system) {
  Rational theta = exact_rate(system);
  RateTestResult res = rate_test(system, theta);
  auto* mv = std::get_if<MaxValues>(&res);
  if (mv == nullptr) {
    throw std::logic_error("internal: rate test reported a positive cycle at the exact rate");
  }
  return {std::move(theta), std::move(mv->z)};
}

PseudoLoop witness_pseudo_loop(const ReplacementSystem& system) {
  return pseudo_loop_from_optimum(system, certificate_at_rate(system));
}

std::optional<PseudoLoop> positive_rate_witness(const ReplacementSystem& system,
                                                const Rational& lambda0) {
  TestRun run = run_rate_test(system, lambda0);
  auto* pc = std::get_if<PositiveCycle>(&run.result);
  if (pc == nullptr) return std::nullopt;
  const std::vector<FunctionId>& cyc = pc->cycle;
  FunctionId start = cyc.front();

  // Value-justification tree of the test state, with the cycle's origin cut
  // back to a leaf; the pre-expansion justifications form a DAG, so this
  // unfolds to a finite tree.
  std::function<std::int32_t(FunctionId, CompositionTree&)> build =
      [&](FunctionId x, CompositionTree& tree) -> std::int32_t {
    if (x != start && run.expanded[x]) {
      auto [u, w] = system.rule[x];
      std::int32_t l = build(u, tree);
      std::int32_t r = build(w, tree);
      return tree.add_node(x, l, r);
    }
    return tree.add_leaf(x);
  };

  PseudoLoop loop;
  std::int32_t cur = loop.tree.add_leaf(start);
  LeafPath reversed;
  for (std::size_t i = cyc.size(); i-- > 0;) {
    FunctionId v = cyc[i];
    FunctionId next = cyc[(i + 1) % cyc.size()];
    auto [u, w] = system.rule[v];
    Side side = u == next ? Side::left : Side::right;
    FunctionId sibling = side == Side::left ? w : u;
    std::int32_t sib = build(sibling, loop.tree);
    cur = side == Side::left ? loop.tree.add_node(v, cur, sib) : loop.tree.add_node(v, sib, cur);
    reversed.push_back(side);
  }
  loop.tree.root = cur;
  loop.marked_path.assign(reversed.rbegin(), reversed.rend());
  return loop;
}

}  // namespace growth
