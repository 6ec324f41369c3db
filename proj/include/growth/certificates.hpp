#pragma once

#include <stdexcept>
#include <vector>

#include "growth/pseudoloop.hpp"

namespace growth {

// Evidence that theta bounds the growth rate from above: for every v with
// M(v) = (u, w), z_v >= c_v - theta and z_v >= z_u + z_w. When theta is the
// least feasible value, theta equals the growth rate.
struct PrimalCertificate {
  Rational theta;
  std::vector<Rational> z;  // indexed by FunctionId
};

// Evidence from below: a normalized leaf/internal-node counting of a
// pseudo-loop. Feasibility means x, y >= 0, sum x = 1 and for every v
//   x_v + y_v = sum of y_u over every rule slot M(u) that mentions v.
// The objective sum c_v * x_v is the certified rate.
struct DualCertificate {
  std::vector<Rational> x;
  std::vector<Rational> y;
};

// All 2|V| inequalities, exactly. Codes: "primal-size", "primal-ground"
// (z_v < c_v - theta), "primal-pair" (z_v < z_u + z_w).
std::vector<Violation> check_primal(const ReplacementSystem& system,
                                    const PrimalCertificate& cert);

// Least fixpoint of: v is decomposable if z_v = c_v - theta, or
// z_v = z_u + z_w with both children decomposable. Sorted ascending.
std::vector<FunctionId> decomposable_set(const ReplacementSystem& system,
                                         const PrimalCertificate& cert);

// Edge v -> u iff u is a rule child of v, z_v = z_u + z_w holds exactly and
// the sibling w is decomposable.
Digraph decomposition_graph(const ReplacementSystem& system, const PrimalCertificate& cert);

// Finite tree rooted at v whose leaves justify z_v: the sum of c - theta
// over its leaves equals z_v exactly. Throws std::invalid_argument when v
// is not decomposable.
CompositionTree decomposition_tree(const ReplacementSystem& system,
                                   const PrimalCertificate& cert, FunctionId v);

class NotOptimalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Extracts a pseudo-loop of rate exactly theta from a feasible certificate:
// main path along a cycle of the decomposition graph, off-path branches the
// decomposition trees of the siblings. A cycle exists precisely when theta
// is the LP minimum; otherwise NotOptimalError ("not-optimal") is thrown.
PseudoLoop pseudo_loop_from_optimum(const ReplacementSystem& system,
                                    const PrimalCertificate& cert);

// Counts leaves (x) and internal nodes (y) per label, drops one leaf count
// for the root label (the marked leaf), and normalizes by the remaining
// leaf total. Feasible for every valid loop; objective = rate of the loop.
DualCertificate dual_from_pseudo_loop(const ReplacementSystem& system, const PseudoLoop& loop);

Rational dual_objective(const ReplacementSystem& system, const DualCertificate& cert);

// Flow equalities, nonnegativity and normalization, exactly. Codes:
// "dual-size", "dual-negative", "dual-flow", "dual-normalization".
std::vector<Violation> check_dual(const ReplacementSystem& system, const DualCertificate& cert);

}  // namespace growth
