#include "straightedge/rational.hpp"

namespace straightedge {

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (sgn(q) < 0) return std::nullopt;
  const mpz_class& num = q.get_num();
  const mpz_class& den = q.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) {
    return std::nullopt;
  }
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  Rational r(rn, rd);
  r.canonicalize();
  return r;
}

std::pair<Rational, Integer> split_square(const Rational& q) {
  // q = n/d = (n*d)/d^2
  Integer m = q.get_num() * q.get_den();
  Integer s = 1;
  for (unsigned long p = 2; p < 1000; ++p) {
    const unsigned long p2 = p * p;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p2)) {
      m /= p2;
      s *= p;
    }
  }
  if (mpz_perfect_square_p(m.get_mpz_t())) {
    Integer r;
    mpz_sqrt(r.get_mpz_t(), m.get_mpz_t());
    s *= r;
    m = 1;
  }
  Rational factor(s, q.get_den());
  factor.canonicalize();
  return {factor, m};
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational floor_dyadic(const Rational& q, unsigned bits) {
  mpz_class scaled = q.get_num();
  scaled <<= bits;
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), scaled.get_mpz_t(), q.get_den().get_mpz_t());
  Rational r(out);
  r /= Rational(mpz_class(1) << bits);
  return r;
}

Rational ceil_dyadic(const Rational& q, unsigned bits) {
  mpz_class scaled = q.get_num();
  scaled <<= bits;
  mpz_class out;
  mpz_cdiv_q(out.get_mpz_t(), scaled.get_mpz_t(), q.get_den().get_mpz_t());
  Rational r(out);
  r /= Rational(mpz_class(1) << bits);
  return r;
}

}  // namespace straightedge
