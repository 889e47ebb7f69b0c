#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "straightedge/rational.hpp"

namespace straightedge {

class Tower;
using TowerPtr = std::shared_ptr<const Tower>;

/// Closed rational interval [lo, hi].
struct Interval {
  Rational lo;
  Rational hi;

  bool contains(const Rational& q) const { return lo <= q && q <= hi; }
  Rational width() const { return hi - lo; }
};

/// Element of a real quadratic tower Q = F0 < F1 < ... < Fn, Fk+1 = Fk(sqrt(rk)).
///
/// Stored as 2^n rational coefficients over the monomial basis of the
/// generators; bit j of a coefficient index selects the generator of level
/// j+1. A null tower means the element is rational. Values are kept in the
/// smallest ancestor tower that contains them, so a rational result always
/// has a null tower.
class Real {
 public:
  Real() : coeffs_{Rational(0)} {}
  Real(long v) : coeffs_{Rational(v)} {}  // NOLINT
  Real(const Rational& q) : coeffs_{q} {}  // NOLINT
  Real(TowerPtr tower, std::vector<Rational> coeffs);

  static Real rational(long num, long den = 1) { return Real(make_rational(num, den)); }

  const TowerPtr& tower() const { return tower_; }
  std::span<const Rational> coeffs() const { return coeffs_; }
  std::size_t depth() const;
  std::size_t degree() const { return std::size_t{1} << depth(); }

  bool is_zero() const;
  bool is_rational() const { return tower_ == nullptr; }
  /// Requires is_rational().
  const Rational& rational_value() const;

  /// Normalised trace over Q: the coefficient of 1. Independent of the basis.
  const Rational& rational_part() const { return coeffs_[0]; }

  /// -1, 0 or +1, decided by exact zero test then interval refinement.
  int sign() const;
  /// Enclosing interval whose width shrinks as `bits` grows.
  Interval enclose(unsigned bits) const;
  double approx() const;

  Real inverse() const;
  /// A root inside the current tower, if the element is a square there.
  std::optional<Real> sqrt_in_tower() const;
  /// Non-negative square root; adjoins a new level when needed.
  Real sqrt(std::size_t max_degree = kDefaultMaxDegree) const;

  Real operator-() const;
  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);
  Real& operator+=(const Real& b) { return *this = *this + b; }
  Real& operator-=(const Real& b) { return *this = *this - b; }
  Real& operator*=(const Real& b) { return *this = *this * b; }
  Real& operator/=(const Real& b) { return *this = *this / b; }

  friend bool operator==(const Real& a, const Real& b) { return (a - b).is_zero(); }
  friend bool operator<(const Real& a, const Real& b) { return (a - b).sign() < 0; }
  friend bool operator>(const Real& a, const Real& b) { return b < a; }
  friend bool operator<=(const Real& a, const Real& b) { return !(b < a); }
  friend bool operator>=(const Real& a, const Real& b) { return !(a < b); }

  std::string to_string() const;

 private:
  friend class Tower;
  friend struct TowerOps;
  void shrink();

  TowerPtr tower_;
  std::vector<Rational> coeffs_;
};

/// One level of a tower: parent(sqrt(radicand)).
///
/// Nodes are immutable in value. They memoise generator enclosures, merge
/// results and the images of foreign generators discovered while merging.
class Tower : public std::enable_shared_from_this<Tower> {
 public:
  /// Adjoins sqrt(radicand) on top of `parent`; the caller guarantees that
  /// radicand is positive and not a square in parent.
  static TowerPtr extend(const TowerPtr& parent, const Real& radicand, std::size_t max_degree);

  /// Smallest tower known to contain both a and b (the compositum).
  static TowerPtr merge(const TowerPtr& a, const TowerPtr& b);

  const TowerPtr& parent() const { return parent_; }
  /// Radicand of this level, as an element of parent().
  const Real& radicand() const { return radicand_; }
  /// Radicand coefficients in the parent's basis.
  std::span<const Rational> radicand_coeffs() const { return radicand_padded_; }
  std::size_t depth() const { return depth_; }
  std::size_t degree() const { return std::size_t{1} << depth_; }
  std::size_t max_degree() const { return max_degree_; }

  /// Levels from the bottom (depth 1) up to this node.
  std::vector<const Tower*> chain() const;

  /// Enclosure of sqrt(radicand) at roughly `bits` bits.
  Interval generator_interval(unsigned bits) const;

  static bool is_ancestor_or_self(const Tower* ancestor, const Tower* node);

 private:
  Tower(TowerPtr parent, Real radicand, std::size_t max_degree);

  struct Alias {
    std::weak_ptr<const Tower> source;
    std::vector<Rational> image;  // coefficients in this node's tower
  };

  /// Image of `source`'s generator in this tower (or an ancestor's alias).
  std::optional<std::vector<Rational>> generator_image(const Tower* source) const;
  void add_alias(const TowerPtr& source, std::vector<Rational> image) const;

  friend class Real;
  friend struct TowerOps;

  TowerPtr parent_;
  Real radicand_;
  std::vector<Rational> radicand_padded_;  // radicand in parent's basis
  std::size_t depth_;
  std::size_t max_degree_;

  mutable std::mutex mutex_;
  mutable std::map<unsigned, Interval> generator_cache_;
  mutable std::map<const Tower*, Alias> aliases_;
  mutable std::map<const Tower*, std::pair<std::weak_ptr<const Tower>, std::weak_ptr<const Tower>>>
      merge_cache_;
};

std::ostream& operator<<(std::ostream& os, const Real& x);

}  // namespace straightedge
