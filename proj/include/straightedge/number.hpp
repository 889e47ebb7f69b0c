#pragma once

#include <string>

#include "straightedge/tower.hpp"

namespace straightedge {

/// Element of a quadratic tower, optionally complexified by a formal sqrt(-1)
/// on top: value = re + i*im with re, im in a real tower.
///
/// This is the coordinate type for every geometric object. Elements with a
/// zero imaginary part behave exactly like Real and support ordering.
class Number {
 public:
  Number() = default;
  Number(long v) : re_(v) {}                 // NOLINT
  Number(const Rational& q) : re_(q) {}      // NOLINT
  Number(const Real& re) : re_(re) {}        // NOLINT
  Number(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) {}

  static Number rational(long num, long den = 1) { return Number(Real::rational(num, den)); }
  static Number i() { return Number(Real(0), Real(1)); }

  const Real& re() const { return re_; }
  const Real& im() const { return im_; }

  bool is_real() const { return im_.is_zero(); }
  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_rational() const { return is_real() && re_.is_rational(); }
  /// Degree over Q of the real tower(s) holding the value, doubled when complex.
  std::size_t degree() const;

  /// Sign of a real element; throws NonRealError when the imaginary part is nonzero.
  int sign() const;
  /// Real value; throws NonRealError when not real.
  const Real& real() const;
  double approx() const { return real().approx(); }

  Number conj() const { return Number(re_, -im_); }
  Number inverse() const;

  /// Principal square root with no sign constraint (complexifies as needed).
  Number sqrt(std::size_t max_degree = kDefaultMaxDegree) const;
  /// Real non-negative square root; rejects negative or non-real radicands.
  Number real_sqrt(std::size_t max_degree = kDefaultMaxDegree) const;

  Number operator-() const { return Number(-re_, -im_); }
  friend Number operator+(const Number& a, const Number& b);
  friend Number operator-(const Number& a, const Number& b);
  friend Number operator*(const Number& a, const Number& b);
  friend Number operator/(const Number& a, const Number& b);
  Number& operator+=(const Number& b) { return *this = *this + b; }
  Number& operator-=(const Number& b) { return *this = *this - b; }
  Number& operator*=(const Number& b) { return *this = *this * b; }
  Number& operator/=(const Number& b) { return *this = *this / b; }

  friend bool operator==(const Number& a, const Number& b) { return (a - b).is_zero(); }
  friend bool operator<(const Number& a, const Number& b) { return a.real() < b.real(); }
  friend bool operator>(const Number& a, const Number& b) { return b < a; }
  friend bool operator<=(const Number& a, const Number& b) { return !(b < a); }
  friend bool operator>=(const Number& a, const Number& b) { return !(a < b); }

  /// Expression text, e.g. `1/2 + sqrt(3)/2`; the imaginary unit prints as sqrt(-1).
  std::string to_string() const;

 private:
  Real re_;
  Real im_;
};

inline bool is_zero(const Number& x) { return x.is_zero(); }

std::ostream& operator<<(std::ostream& os, const Number& x);

/// Parses expression text: integers, decimals, + - * / ( ) and sqrt(...).
/// Throws ParseError.
Number parse_number(std::string_view text, std::size_t max_degree = kDefaultMaxDegree);

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

}  // namespace straightedge
