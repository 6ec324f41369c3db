#include "growth/rational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace growth {

namespace {

mpz_class parse_integer(std::string_view text, std::string_view whole) {
  if (text.empty()) {
    throw std::invalid_argument("invalid rational '" + std::string(whole) + "': missing digits");
  }
  std::size_t i = text.front() == '-' ? 1 : 0;
  if (i == text.size()) {
    throw std::invalid_argument("invalid rational '" + std::string(whole) + "': missing digits");
  }
  for (std::size_t j = i; j < text.size(); ++j) {
    if (!std::isdigit(static_cast<unsigned char>(text[j]))) {
      throw std::invalid_argument("invalid rational '" + std::string(whole) +
                                  "': unexpected character '" + text[j] + "'");
    }
  }
  return mpz_class(std::string(text), 10);
}

}  // namespace

Rational::Rational(long num, long den) : Rational(mpz_class(num), mpz_class(den)) {}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
  if (den == 0) {
    throw std::invalid_argument("rational with zero denominator");
  }
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_integer(text, text), mpz_class(1));
  }
  mpz_class num = parse_integer(text.substr(0, slash), text);
  std::string_view den_part = text.substr(slash + 1);
  if (!den_part.empty() && den_part.front() == '-') {
    throw std::invalid_argument("invalid rational '" + std::string(text) +
                                "': denominator must be positive");
  }
  mpz_class den = parse_integer(den_part, text);
  if (den == 0) {
    throw std::invalid_argument("invalid rational '" + std::string(text) +
                                "': zero denominator");
  }
  return Rational(num, den);
}

std::string Rational::str() const {
  if (is_integer()) {
    return v_.get_num().get_str();
  }
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

mpz_class Rational::floor() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
  return q;
}

Rational Rational::operator-() const {
  Rational r;
  r.v_ = -v_;
  return r;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.v_ == 0) {
    throw std::invalid_argument("rational division by zero");
  }
  v_ /= o.v_;
  return *this;
}

Rational abs(const Rational& a) {
  Rational r;
  r.v_ = ::abs(a.v_);
  return r;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace growth
