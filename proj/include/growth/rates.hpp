#pragma once

#include <optional>
#include <variant>

#include "growth/certificates.hpp"

namespace growth {

// Outcome of the quadratic rate test at a probe lambda0.
//
// PositiveCycle: the lambda0-shifted system admits a pseudo-loop of
// positive rate, i.e. lambda0 < lambda. The cycle lists function ids in
// dependency direction (each element's rule mentions the next, wrapping).
//
// MaxValues: every function has a maximum shifted tree value z_v; the pair
// (theta = lambda0, z) is a feasible solution of the primal system and
// z_v = max(c_v - lambda0, z_u + z_w) holds as an exact fixpoint.
struct PositiveCycle {
  std::vector<FunctionId> cycle;
};
struct MaxValues {
  std::vector<Rational> z;
};
using RateTestResult = std::variant<PositiveCycle, MaxValues>;

// Decides lambda0 < lambda in O(|V|^2) arithmetic operations: start every
// z_v at c_v - lambda0, expand each variable at most once to z_u + z_w, and
// push improvements through recorded dependencies; if a propagation wave
// started by expanding v reaches v again, the dependency cycle certifies a
// positive-rate pseudo-loop.
RateTestResult rate_test(const ReplacementSystem& system, const Rational& lambda0);

struct RateInterval {
  Rational lo;
  Rational hi;  // lo <= lambda <= hi
};

// Midpoint bisection of [min c, max c] down to width <= epsilon.
RateInterval approx_rate(const ReplacementSystem& system, const Rational& epsilon);

// Exact growth rate for rational starting values. Starting values are
// scaled to integers, the rate is bracketed by Stern-Brocot mediant
// bisection (with exponential run acceleration, keeping the overall cubic
// bound) until the interval is narrower than 1/B^2 for B = |V|*2^(|V|-1),
// and the unique fraction with denominator <= B inside is recovered by
// Stern-Brocot descent.
Rational exact_rate(const ReplacementSystem& system);

// theta = exact_rate, z = the MaxValues fixpoint at that theta; feasible
// and optimal.
PrimalCertificate certificate_at_rate(const ReplacementSystem& system);

// Pseudo-loop of rate exactly equal to the growth rate, extracted from the
// optimal certificate.
PseudoLoop witness_pseudo_loop(const ReplacementSystem& system);

// Debug helper: when the rate test reports a positive cycle, materialize a
// pseudo-loop whose rate strictly exceeds lambda0 (main path = the detected
// cycle, branches = the test's value-justification trees). Returns nullopt
// when the test saturates. Not part of the rate-test contract.
std::optional<PseudoLoop> positive_rate_witness(const ReplacementSystem& system,
                                                const Rational& lambda0);

// Smallest-denominator rational in the interval; bounds may be open or
// closed independently. The interval must be nonempty.
Rational simplest_rational_in(const Rational& lo, const Rational& hi, bool lo_open, bool hi_open);

}  // namespace growth
