#pragma once

#include <optional>
#include <string>
#include <vector>

#include "straightedge/polynomial.hpp"

namespace straightedge {

struct RationalRootReport {
  std::vector<Rational> roots;       // distinct, ascending
  std::vector<Rational> candidates;  // every value tested, in test order
};

/// Rational roots by the rational-root theorem after clearing denominators.
RationalRootReport rational_roots(const RationalPoly& p);

/// Disjoint rational intervals, ascending, each holding exactly one real root
/// of p and no wider than max_width (Sturm sequences, exact bisection).
std::vector<Interval> isolate_real_roots(const RationalPoly& p, const Rational& max_width);

/// Outcome of the cubic non-membership test. When `excluded`, no root of the
/// cubic lies in any quadratic tower over Q.
struct CubicWitness {
  RationalPoly poly;
  bool excluded = false;
  std::optional<Rational> rational_root;
  std::vector<Rational> candidates;

  /// Human-readable argument, one step per line.
  std::string transcript() const;
  /// Recomputes the rational-root test from scratch.
  bool revalidate() const;
};

/// Throws std::invalid_argument unless deg p == 3.
CubicWitness certify_cubic_not_in_G(const RationalPoly& p);

/// Arithmetic in Q[t]/(modulus).
RationalPoly mul_mod(const RationalPoly& a, const RationalPoly& b, const RationalPoly& modulus);

/// Inverse of a in Q[t]/(modulus); throws std::domain_error when they share a factor.
RationalPoly inverse_mod(const RationalPoly& a, const RationalPoly& modulus);

/// a(b(t)).
RationalPoly compose(const RationalPoly& a, const RationalPoly& b);

/// A polynomial g of degree below deg(modulus) with g(element) = value in
/// Q[t]/(modulus); nullopt when value is not in the subalgebra element generates.
std::optional<RationalPoly> express_in(const RationalPoly& element, const RationalPoly& value,
                                       const RationalPoly& modulus);

/// Resolvent cubic of a quartic, whose roots are r1 r2 + r3 r4 and its conjugates.
RationalPoly resolvent_cubic(const RationalPoly& quartic);

/// Characteristic polynomial of multiplication by `element` on Q[t]/(modulus).
/// For an irreducible modulus this is a power of the minimal polynomial.
RationalPoly characteristic_polynomial(const RationalPoly& element, const RationalPoly& modulus);

}  // namespace straightedge
