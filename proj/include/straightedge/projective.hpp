#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "straightedge/number.hpp"

namespace straightedge {

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Vec3 = std::array<Number, 3>;

Vec3 cross(const Vec3& a, const Vec3& b);
Number dot(const Vec3& a, const Vec3& b);
bool is_null(const Vec3& v);
/// a and b are nonzero multiples of each other.
bool proportional(const Vec3& a, const Vec3& b);

struct Mat3 {
  std::array<std::array<Number, 3>, 3> m;

  static Mat3 identity();
  static Mat3 diag(const Number& a, const Number& b, const Number& c);
  static Mat3 from_rows(const std::array<Vec3, 3>& rows);

  const Number& operator()(int i, int j) const { return m[i][j]; }
  Number& operator()(int i, int j) { return m[i][j]; }

  Vec3 operator*(const Vec3& v) const;
  Mat3 operator*(const Mat3& b) const;
  Mat3 transpose() const;
  Number det() const;
  /// adj(M) with M * adj(M) = det(M) I.
  Mat3 adjugate() const;
  Mat3 inverse() const;
  bool is_symmetric() const;
};

/// Homogeneous point (X:Y:Z); kept unnormalised.
class ProjPoint {
 public:
  explicit ProjPoint(Vec3 coords);
  ProjPoint(const Number& x, const Number& y, const Number& z);
  static ProjPoint affine(const Number& x, const Number& y) { return ProjPoint(x, y, Number(1)); }

  const Vec3& coords() const { return c_; }
  bool is_finite() const { return !c_[2].is_zero(); }
  bool is_real() const;
  /// Affine coordinates; throws GeometryError at infinity.
  Number x() const;
  Number y() const;
  /// Coordinates divided by the last nonzero entry.
  Vec3 normalized() const;

  friend bool operator==(const ProjPoint& a, const ProjPoint& b) { return proportional(a.c_, b.c_); }

  std::string to_string() const;

 private:
  Vec3 c_;
};

/// Line uX + vY + wZ = 0, stored as the dual triple [u:v:w].
class ProjLine {
 public:
  explicit ProjLine(Vec3 coeffs);
  ProjLine(const Number& u, const Number& v, const Number& w);
  static ProjLine at_infinity() { return ProjLine(Number(0), Number(0), Number(1)); }

  const Vec3& coeffs() const { return c_; }
  bool contains(const ProjPoint& p) const { return dot(c_, p.coords()).is_zero(); }
  bool is_real() const;
  /// Point at infinity of the line.
  ProjPoint direction() const;
  /// Rescales to real coefficients when the line is a complex multiple of a real line.
  ProjLine realified() const;

  friend bool operator==(const ProjLine& a, const ProjLine& b) { return proportional(a.c_, b.c_); }

  std::string to_string() const;

 private:
  Vec3 c_;
};

/// Conic pᵀ M p = 0 with M symmetric and nonzero.
class Conic {
 public:
  explicit Conic(Mat3 m);
  /// Quadratic form order: x², xy, y², xz, yz, z².
  static Conic from_coefficients(const std::array<Number, 6>& c);
  /// (x - cx)² + (y - cy)² = r2.
  static Conic circle(const Number& cx, const Number& cy, const Number& r2);
  static Conic unit_circle() { return circle(Number(0), Number(0), Number(1)); }

  const Mat3& matrix() const { return m_; }
  std::array<Number, 6> coefficients() const;
  Number evaluate(const ProjPoint& p) const;
  bool contains(const ProjPoint& p) const { return evaluate(p).is_zero(); }
  bool is_degenerate() const { return m_.det().is_zero(); }
  bool is_real() const;

  friend bool operator==(const Conic& a, const Conic& b);
  friend Conic operator+(const Conic& a, const Conic& b);
  friend Conic operator*(const Number& s, const Conic& a);

  std::string to_string() const;

 private:
  Mat3 m_;
};

/// Invertible projective transformation.
class ProjMap {
 public:
  explicit ProjMap(Mat3 a);
  static ProjMap identity() { return ProjMap(Mat3::identity()); }

  const Mat3& matrix() const { return a_; }
  const Mat3& inverse_matrix() const { return inv_; }
  ProjMap inverse() const { return ProjMap(inv_, a_); }
  ProjMap then(const ProjMap& next) const { return ProjMap(next.a_ * a_, inv_ * next.inv_); }

  ProjPoint apply(const ProjPoint& p) const { return ProjPoint(a_ * p.coords()); }
  ProjLine apply(const ProjLine& l) const { return ProjLine(inv_.transpose() * l.coeffs()); }
  Conic apply(const Conic& c) const { return Conic(inv_.transpose() * c.matrix() * inv_); }

 private:
  ProjMap(Mat3 a, Mat3 inv) : a_(std::move(a)), inv_(std::move(inv)) {}
  Mat3 a_;
  Mat3 inv_;
};

/// Line through two distinct points.
ProjLine join(const ProjPoint& p, const ProjPoint& q);
/// Common point of two distinct lines.
ProjPoint meet(const ProjLine& l, const ProjLine& m);
bool collinear(const ProjPoint& a, const ProjPoint& b, const ProjPoint& c);

ProjLine polar(const ProjPoint& p, const Conic& c);
ProjPoint pole(const ProjLine& l, const Conic& c);
/// Pole of the line at infinity.
ProjPoint center(const Conic& c);

enum class IntersectMode { RealOnly, Complex };

struct Intersection {
  std::vector<ProjPoint> points;  // at most two
  bool tangent = false;           // one point of multiplicity two

  std::size_t multiplicity(std::size_t k) const { return tangent ? 2 : (k < points.size() ? 1 : 0); }
};

/// Points of l ∩ C. Real results are ordered by exact lexicographic comparison
/// of their affine coordinates. Throws GeometryError if l lies on C.
Intersection line_conic_intersect(const ProjLine& l, const Conic& c,
                                  IntersectMode mode = IntersectMode::RealOnly,
                                  std::size_t max_degree = kDefaultMaxDegree);

/// True iff C passes through both cyclic points (1 : ±i : 0).
bool is_circle(const Conic& c);

/// Axes of a central conic C, given in a frame whose unit circle is `frame`.
/// For a circle only the diameter through the frame center is returned.
std::vector<ProjLine> symmetry_axes(const Conic& c, const Conic& frame,
                                    std::size_t max_degree = kDefaultMaxDegree);

/// Cross-ratio (a, b; c, d) of four collinear points.
Number cross_ratio(const ProjPoint& a, const ProjPoint& b, const ProjPoint& c, const ProjPoint& d);

/// Deterministic total order on real points: finite points first, then
/// lexicographic in normalized coordinates.
bool point_less(const ProjPoint& a, const ProjPoint& b);

/// Squared Euclidean distance between finite real points.
Number distance2(const ProjPoint& a, const ProjPoint& b);

}  // namespace straightedge
