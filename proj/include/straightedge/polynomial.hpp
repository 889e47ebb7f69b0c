#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "straightedge/number.hpp"
#include "straightedge/rational.hpp"

namespace straightedge {

/// Dense univariate polynomial over an exact field; coefficient i multiplies t^i.
/// The leading coefficient is nonzero unless the polynomial is zero.
template <class T>
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }  // NOLINT
  Polynomial(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }

  static Polynomial constant(T v) { return Polynomial(std::vector<T>{std::move(v)}); }
  static Polynomial monomial(T v, std::size_t power) {
    std::vector<T> c(power + 1, T(0));
    c[power] = std::move(v);
    return Polynomial(std::move(c));
  }
  /// Builds from highest degree down, e.g. {1, -4, -2, 4} is t^3 - 4t^2 - 2t + 4.
  static Polynomial from_high(std::vector<T> c) { return Polynomial(std::vector<T>(c.rbegin(), c.rend())); }

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<T>& coeffs() const { return c_; }
  T coeff(std::size_t i) const { return i < c_.size() ? c_[i] : T(0); }
  const T& leading() const {
    if (c_.empty()) throw std::domain_error("leading coefficient of the zero polynomial");
    return c_.back();
  }

  template <class U>
  U eval(const U& x) const {
    U acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + U(*it);
    return acc;
  }

  Polynomial derivative() const {
    std::vector<T> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * T(static_cast<long>(i)));
    return Polynomial(std::move(d));
  }

  Polynomial monic() const {
    if (is_zero()) return *this;
    T inv = T(1) / leading();
    std::vector<T> c = c_;
    for (auto& x : c) x = x * inv;
    return Polynomial(std::move(c));
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<T> c(std::max(a.c_.size(), b.c_.size()), T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] = c[i] + a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] = c[i] + b.c_[i];
    return Polynomial(std::move(c));
  }
  friend Polynomial operator-(const Polynomial& a) {
    std::vector<T> c = a.c_;
    for (auto& x : c) x = -x;
    return Polynomial(std::move(c));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> c(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (straightedge::is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(c));
  }
  friend Polynomial operator*(const T& s, const Polynomial& a) { return constant(s) * a; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (!(a.c_[i] == b.c_[i])) return false;
    }
    return true;
  }

  /// Euclidean division: *this = q * d + r with deg r < deg d.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const {
    if (d.is_zero()) throw DivisionByZero();
    std::vector<T> r = c_;
    if (degree() < d.degree()) return {Polynomial(), *this};
    std::vector<T> q(c_.size() - d.c_.size() + 1, T(0));
    T inv = T(1) / d.leading();
    for (std::size_t k = q.size(); k-- > 0;) {
      T f = r[k + d.c_.size() - 1] * inv;
      q[k] = f;
      if (straightedge::is_zero(f)) continue;
      for (std::size_t j = 0; j < d.c_.size(); ++j) r[k + j] = r[k + j] - f * d.c_[j];
    }
    r.resize(d.c_.size() - 1);
    return {Polynomial(std::move(q)), Polynomial(std::move(r))};
  }

  std::string to_string(const std::string& var = "t") const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = c_.size(); k-- > 0;) {
      if (straightedge::is_zero(c_[k])) continue;
      if (!first) os << " + ";
      first = false;
      os << "(" << c_[k] << ")";
      if (k >= 1) os << "*" << var;
      if (k >= 2) os << "^" << k;
    }
    return os.str();
  }

 private:
  void trim() {
    while (!c_.empty() && straightedge::is_zero(c_.back())) c_.pop_back();
  }

  std::vector<T> c_;
};

using RationalPoly = Polynomial<Rational>;
using NumberPoly = Polynomial<Number>;

/// Monic gcd via the Euclidean algorithm; p and q must not both be zero.
template <class T>
Polynomial<T> poly_gcd(Polynomial<T> p, Polynomial<T> q) {
  if (p.is_zero() && q.is_zero()) throw std::invalid_argument("gcd of two zero polynomials");
  while (!q.is_zero()) {
    auto r = p.divmod(q).second;
    p = std::move(q);
    q = std::move(r);
  }
  return p.monic();
}

/// Lifts a rational polynomial to tower coefficients.
NumberPoly to_number_poly(const RationalPoly& p);

}  // namespace straightedge
