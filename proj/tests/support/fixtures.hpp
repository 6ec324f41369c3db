#pragma once

#include <random>
#include <vector>

#include "growth/system.hpp"

namespace growth::testing {

// Four baskets of values 1..4 replaced in a rotating manner:
// M(b_i) = (b_{i+1 mod 4}, b_{i+2 mod 4}). Growth rate 11/3.
inline ReplacementSystem rot4() {
  ReplacementSystem s;
  for (long i = 0; i < 4; ++i) s.functions.push_back({"b" + std::to_string(i + 1), Rational(i + 1)});
  for (FunctionId i = 0; i < 4; ++i) s.rule.emplace_back((i + 1) % 4, (i + 2) % 4);
  return s;
}

// Single self-replacing function of value 5.
inline ReplacementSystem s1() {
  ReplacementSystem s;
  s.functions.push_back({"a", Rational(5)});
  s.rule.emplace_back(0, 0);
  return s;
}

// 'a' feeds into the self-looping 'b'; the condensation has a single
// component on top of a looped one.
inline ReplacementSystem chain() {
  ReplacementSystem s;
  s.functions.push_back({"a", Rational(1)});
  s.functions.push_back({"b", Rational(2)});
  s.rule.emplace_back(1, 1);
  s.rule.emplace_back(1, 1);
  return s;
}

// Family with growth rate 2^m/(2^m+1): functions a, b, v0..vm with
// M(a) = (a,b), M(b) = (a,v0), M(v_i) = (v_{i+1}, v_{i+1}), M(v_m) = (a,a),
// all starting values 0 except c_{v_m} = 1.
inline ReplacementSystem remark_family(unsigned m) {
  ReplacementSystem s;
  s.functions.push_back({"a", Rational(0)});
  s.functions.push_back({"b", Rational(0)});
  for (unsigned i = 0; i <= m; ++i) {
    s.functions.push_back({"v" + std::to_string(i), i == m ? Rational(1) : Rational(0)});
  }
  s.rule.emplace_back(0, 1);  // a
  s.rule.emplace_back(0, 2);  // b
  for (unsigned i = 0; i < m; ++i) s.rule.emplace_back(3 + i, 3 + i);  // v_i
  s.rule.emplace_back(0, 0);                                           // v_m
  return s;
}

// Two-function system from the grammar A -> AB, B -> AA with weights 1, 2.
inline ReplacementSystem grammar2() {
  ReplacementSystem s;
  s.functions.push_back({"A", Rational(1)});
  s.functions.push_back({"B", Rational(2)});
  s.rule.emplace_back(0, 1);
  s.rule.emplace_back(0, 0);
  return s;
}

// Negative and fractional starting values.
inline ReplacementSystem mixed2() {
  ReplacementSystem s;
  s.functions.push_back({"a", Rational(-1, 2)});
  s.functions.push_back({"b", Rational(7, 3)});
  s.rule.emplace_back(1, 0);
  s.rule.emplace_back(0, 1);
  return s;
}

inline std::vector<ReplacementSystem> all_fixtures() {
  return {rot4(), s1(), chain(), remark_family(1), remark_family(2), remark_family(3), grammar2(),
          mixed2()};
}

// Random |V| <= max_n system with starting values from
// {-3..3} u {+-1/2, +-1/3}. Uses rng() % k directly so sequences are
// reproducible across standard library implementations.
inline ReplacementSystem random_system(std::mt19937_64& rng, std::size_t max_n = 4) {
  static const std::vector<Rational> pool = {
      Rational(-3), Rational(-2), Rational(-1), Rational(0),    Rational(1),
      Rational(2),  Rational(3),  Rational(1, 2), Rational(-1, 2), Rational(1, 3),
      Rational(-1, 3)};
  std::size_t n = 1 + rng() % max_n;
  ReplacementSystem s;
  for (std::size_t i = 0; i < n; ++i) {
    s.functions.push_back({"f" + std::to_string(i), pool[rng() % pool.size()]});
  }
  for (std::size_t i = 0; i < n; ++i) {
    s.rule.emplace_back(static_cast<FunctionId>(rng() % n), static_cast<FunctionId>(rng() % n));
  }
  return s;
}

}  // namespace growth::testing
