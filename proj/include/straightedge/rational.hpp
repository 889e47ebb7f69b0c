#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace straightedge {

using Rational = mpq_class;
using Integer = mpz_class;

/// Base class for every error raised by exact arithmetic.
class FieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public FieldError {
 public:
  DivisionByZero() : FieldError("division by zero") {}
};

/// A square root of a negative element was requested in a real tower.
class NegativeRadicand : public FieldError {
 public:
  NegativeRadicand()
      : FieldError("negative radicand in a real tower; use the complexified square root") {}
};

/// Ordering or sign requested on an element with a nonzero imaginary part.
class NonRealError : public FieldError {
 public:
  NonRealError() : FieldError("sign query on a non-real element") {}
};

/// A tower would exceed its configured degree bound.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultMaxDegree = std::size_t{1} << 10;

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Exact rational square root, if one exists.
std::optional<Rational> rational_sqrt(const Rational& q);

/// Writes q as s^2 * k with k a squarefree-ish integer (small primes only).
/// Returns {s, k}; k is an integer with no square factor below 1000.
std::pair<Rational, Integer> split_square(const Rational& q);

std::string to_string(const Rational& q);

/// floor(q * 2^bits) / 2^bits and the matching ceiling.
Rational floor_dyadic(const Rational& q, unsigned bits);
Rational ceil_dyadic(const Rational& q, unsigned bits);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

}  // namespace straightedge
