#include "straightedge/projective.hpp"

#include <algorithm>
#include <sstream>

namespace straightedge {

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Number dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

bool is_null(const Vec3& v) { return v[0].is_zero() && v[1].is_zero() && v[2].is_zero(); }

bool proportional(const Vec3& a, const Vec3& b) { return is_null(cross(a, b)); }

// ------------------------------------------------------------------- Mat3

Mat3 Mat3::identity() { return diag(Number(1), Number(1), Number(1)); }

Mat3 Mat3::diag(const Number& a, const Number& b, const Number& c) {
  Mat3 out;
  out.m[0][0] = a;
  out.m[1][1] = b;
  out.m[2][2] = c;
  return out;
}

Mat3 Mat3::from_rows(const std::array<Vec3, 3>& rows) {
  Mat3 out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out.m[i][j] = rows[i][j];
  }
  return out;
}

Vec3 Mat3::operator*(const Vec3& v) const {
  Vec3 out;
  for (int i = 0; i < 3; ++i) out[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
  return out;
}

Mat3 Mat3::operator*(const Mat3& b) const {
  Mat3 out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out.m[i][j] = m[i][0] * b.m[0][j] + m[i][1] * b.m[1][j] + m[i][2] * b.m[2][j];
  }
  return out;
}

Mat3 Mat3::transpose() const {
  Mat3 out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out.m[i][j] = m[j][i];
  }
  return out;
}

Number Mat3::det() const {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Mat3 Mat3::adjugate() const {
  Mat3 out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const int r0 = (j + 1) % 3, r1 = (j + 2) % 3;
      const int c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      out.m[i][j] = m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
    }
  }
  return out;
}

Mat3 Mat3::inverse() const {
  Number d = det();
  if (d.is_zero()) throw GeometryError("singular matrix");
  Mat3 out = adjugate();
  Number inv = d.inverse();
  for (auto& row : out.m) {
    for (auto& x : row) x = x * inv;
  }
  return out;
}

bool Mat3::is_symmetric() const { return m[0][1] == m[1][0] && m[0][2] == m[2][0] && m[1][2] == m[2][1]; }

// ------------------------------------------------------------ point, line

namespace {

std::string vec_string(const Vec3& v) {
  return v[0].to_string() + " : " + v[1].to_string() + " : " + v[2].to_string();
}

bool vec_real(const Vec3& v) { return v[0].is_real() && v[1].is_real() && v[2].is_real(); }

}  // namespace

ProjPoint::ProjPoint(Vec3 coords) : c_(std::move(coords)) {
  if (is_null(c_)) throw GeometryError("point with all-zero homogeneous coordinates");
}

ProjPoint::ProjPoint(const Number& x, const Number& y, const Number& z) : ProjPoint(Vec3{x, y, z}) {}

bool ProjPoint::is_real() const { return vec_real(normalized()); }

Number ProjPoint::x() const {
  if (!is_finite()) throw GeometryError("affine coordinate of a point at infinity");
  return c_[0] / c_[2];
}

Number ProjPoint::y() const {
  if (!is_finite()) throw GeometryError("affine coordinate of a point at infinity");
  return c_[1] / c_[2];
}

Vec3 ProjPoint::normalized() const {
  for (int k = 2; k >= 0; --k) {
    if (!c_[k].is_zero()) {
      Number inv = c_[k].inverse();
      Vec3 out{c_[0] * inv, c_[1] * inv, c_[2] * inv};
      out[k] = Number(1);
      return out;
    }
  }
  return c_;
}

std::string ProjPoint::to_string() const {
  if (is_finite()) return "(" + x().to_string() + ", " + y().to_string() + ")";
  return "(" + vec_string(normalized()) + ")";
}

ProjLine::ProjLine(Vec3 coeffs) : c_(std::move(coeffs)) {
  if (is_null(c_)) throw GeometryError("line with all-zero coefficients");
}

ProjLine::ProjLine(const Number& u, const Number& v, const Number& w) : ProjLine(Vec3{u, v, w}) {}

bool ProjLine::is_real() const { return vec_real(realified().c_); }

ProjPoint ProjLine::direction() const {
  if (c_[0].is_zero() && c_[1].is_zero()) throw GeometryError("the line at infinity has no direction");
  return ProjPoint(-c_[1], c_[0], Number(0));
}

ProjLine ProjLine::realified() const {
  for (const auto& x : c_) {
    if (!x.is_zero()) {
      Number inv = x.inverse();
      return ProjLine(c_[0] * inv, c_[1] * inv, c_[2] * inv);
    }
  }
  return *this;
}

std::string ProjLine::to_string() const { return "[" + vec_string(realified().c_) + "]"; }

// ------------------------------------------------------------------ conic

Conic::Conic(Mat3 m) : m_(std::move(m)) {
  if (!m_.is_symmetric()) throw GeometryError("conic matrix must be symmetric");
  bool nonzero = false;
  for (const auto& row : m_.m) {
    for (const auto& x : row) nonzero = nonzero || !x.is_zero();
  }
  if (!nonzero) throw GeometryError("conic matrix must be nonzero");
}

Conic Conic::from_coefficients(const std::array<Number, 6>& c) {
  const Number half = Number::rational(1, 2);
  Mat3 m;
  m.m[0][0] = c[0];
  m.m[0][1] = m.m[1][0] = c[1] * half;
  m.m[1][1] = c[2];
  m.m[0][2] = m.m[2][0] = c[3] * half;
  m.m[1][2] = m.m[2][1] = c[4] * half;
  m.m[2][2] = c[5];
  return Conic(m);
}

Conic Conic::circle(const Number& cx, const Number& cy, const Number& r2) {
  return from_coefficients({Number(1), Number(0), Number(1), Number(-2) * cx, Number(-2) * cy,
                            cx * cx + cy * cy - r2});
}

std::array<Number, 6> Conic::coefficients() const {
  return {m_.m[0][0], Number(2) * m_.m[0][1], m_.m[1][1], Number(2) * m_.m[0][2], Number(2) * m_.m[1][2],
          m_.m[2][2]};
}

Number Conic::evaluate(const ProjPoint& p) const { return dot(p.coords(), m_ * p.coords()); }

bool Conic::is_real() const {
  // real up to a common scale factor
  const Number* pivot = nullptr;
  for (const auto& row : m_.m) {
    for (const auto& x : row) {
      if (!pivot && !x.is_zero()) pivot = &x;
    }
  }
  Number inv = pivot->inverse();
  for (const auto& row : m_.m) {
    for (const auto& x : row) {
      if (!(x * inv).is_real()) return false;
    }
  }
  return true;
}

bool operator==(const Conic& a, const Conic& b) {
  auto ca = a.coefficients(), cb = b.coefficients();
  // proportional 6-vectors: all 2x2 minors vanish
  for (int i = 0; i < 6; ++i) {
    for (int j = i + 1; j < 6; ++j) {
      if (!(ca[i] * cb[j] - ca[j] * cb[i]).is_zero()) return false;
    }
  }
  return true;
}

Conic operator+(const Conic& a, const Conic& b) {
  Mat3 m;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) m.m[i][j] = a.m_.m[i][j] + b.m_.m[i][j];
  }
  return Conic(m);
}

Conic operator*(const Number& s, const Conic& a) {
  Mat3 m;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) m.m[i][j] = s * a.m_.m[i][j];
  }
  return Conic(m);
}

std::string Conic::to_string() const {
  auto c = coefficients();
  std::string out = "{";
  for (int k = 0; k < 6; ++k) out += (k ? ", " : "") + c[k].to_string();
  return out + "}";
}

// ------------------------------------------------------------------- maps

ProjMap::ProjMap(Mat3 a) : a_(std::move(a)) {
  if (a_.det().is_zero()) throw GeometryError("projective map with singular matrix");
  inv_ = a_.inverse();
}

// ---------------------------------------------------------- incidence ops

ProjLine join(const ProjPoint& p, const ProjPoint& q) {
  Vec3 l = cross(p.coords(), q.coords());
  if (is_null(l)) throw GeometryError("join of coincident points is undefined");
  return ProjLine(l);
}

ProjPoint meet(const ProjLine& l, const ProjLine& m) {
  Vec3 p = cross(l.coeffs(), m.coeffs());
  if (is_null(p)) throw GeometryError("meet of coincident lines is undefined");
  return ProjPoint(p);
}

bool collinear(const ProjPoint& a, const ProjPoint& b, const ProjPoint& c) {
  return dot(cross(a.coords(), b.coords()), c.coords()).is_zero();
}

ProjLine polar(const ProjPoint& p, const Conic& c) {
  if (c.is_degenerate()) throw GeometryError("polar with respect to a degenerate conic");
  return ProjLine(c.matrix() * p.coords());
}

ProjPoint pole(const ProjLine& l, const Conic& c) {
  if (c.is_degenerate()) throw GeometryError("pole with respect to a degenerate conic");
  return ProjPoint(c.matrix().adjugate() * l.coeffs());
}

ProjPoint center(const Conic& c) { return pole(ProjLine::at_infinity(), c); }

bool point_less(const ProjPoint& a, const ProjPoint& b) {
  const bool fa = a.is_finite(), fb = b.is_finite();
  if (fa != fb) return fa;
  Vec3 na = a.normalized(), nb = b.normalized();
  for (int k = 0; k < 3; ++k) {
    if (!(na[k] == nb[k])) return na[k] < nb[k];
  }
  return false;
}

Number distance2(const ProjPoint& a, const ProjPoint& b) {
  Number dx = a.x() - b.x(), dy = a.y() - b.y();
  return dx * dx + dy * dy;
}

Intersection line_conic_intersect(const ProjLine& l, const Conic& c, IntersectMode mode,
                                  std::size_t max_degree) {
  // two independent points on l
  std::vector<Vec3> candidates;
  for (int k = 0; k < 3; ++k) {
    Vec3 e{Number(0), Number(0), Number(0)};
    e[k] = Number(1);
    Vec3 p = cross(l.coeffs(), e);
    if (is_null(p)) continue;
    if (!candidates.empty() && proportional(candidates.front(), p)) continue;
    candidates.push_back(p);
    if (candidates.size() == 2) break;
  }
  const Vec3& p0 = candidates[0];
  const Vec3& p1 = candidates[1];
  const Mat3& m = c.matrix();
  // Q(λ p0 + μ p1) = C λ² + 2B λμ + A μ²
  const Number a = dot(p1, m * p1);
  const Number b = dot(p0, m * p1);
  const Number cc = dot(p0, m * p0);
  if (a.is_zero() && b.is_zero() && cc.is_zero()) throw GeometryError("line lies on the conic");

  auto combine = [&](const Number& lambda, const Number& mu) {
    return ProjPoint(Vec3{lambda * p0[0] + mu * p1[0], lambda * p0[1] + mu * p1[1], lambda * p0[2] + mu * p1[2]});
  };

  Intersection out;
  const Number disc = b * b - a * cc;
  if (disc.is_zero()) {
    out.tangent = true;
    out.points.push_back(a.is_zero() ? ProjPoint(p1) : combine(a, -b));
    return out;
  }
  const bool real_input = disc.is_real() && a.is_real() && b.is_real() && cc.is_real();
  if (mode == IntersectMode::RealOnly) {
    if (!real_input) throw GeometryError("real-only intersection with non-real input");
    if (disc.sign() < 0) return out;
  }
  if (a.is_zero()) {
    out.points.push_back(ProjPoint(p1));
    out.points.push_back(combine(Number(2) * b, -cc));
  } else {
    Number root = disc.sqrt(max_degree);
    out.points.push_back(combine(a, -b + root));
    out.points.push_back(combine(a, -b - root));
  }
  if (out.points[0].is_real() && out.points[1].is_real() && point_less(out.points[1], out.points[0])) {
    std::swap(out.points[0], out.points[1]);
  }
  return out;
}

bool is_circle(const Conic& c) {
  const Number i = Number::i();
  return c.evaluate(ProjPoint(Number(1), i, Number(0))).is_zero() &&
         c.evaluate(ProjPoint(Number(1), -i, Number(0))).is_zero();
}

std::vector<ProjLine> symmetry_axes(const Conic& c, const Conic& frame, std::size_t max_degree) {
  if (!(frame == Conic::unit_circle())) throw GeometryError("symmetry_axes: frame must be the unit circle");
  const Mat3& m = c.matrix();
  const Number a = m(0, 0), b = m(0, 1), d = m(1, 1);
  if ((a * d - b * b).is_zero()) throw GeometryError("symmetry_axes: conic is not central");
  const ProjPoint o = center(c);
  if (b.is_zero() && a == d) {
    // a circle: the only axis that matters is the diameter through the frame center
    const ProjPoint origin(Number(0), Number(0), Number(1));
    if (o == origin) throw GeometryError("axes undefined: circle concentric with the frame");
    return {join(origin, o)};
  }
  std::vector<ProjPoint> directions;
  if (b.is_zero()) {
    directions = {ProjPoint(Number(1), Number(0), Number(0)), ProjPoint(Number(0), Number(1), Number(0))};
  } else {
    Number root = ((a - d) * (a - d) + Number(4) * b * b).sqrt(max_degree);
    const Number half = Number::rational(1, 2);
    for (const Number& lambda : {(a + d + root) * half, (a + d - root) * half}) {
      directions.emplace_back(b, lambda - a, Number(0));
    }
  }
  std::vector<ProjLine> axes;
  for (const auto& dir : directions) axes.push_back(join(o, dir));
  return axes;
}

Number cross_ratio(const ProjPoint& a, const ProjPoint& b, const ProjPoint& c, const ProjPoint& d) {
  const ProjLine l = join(a, b);
  Vec3 ref;
  for (int k = 0; k < 3; ++k) {
    Vec3 e{Number(0), Number(0), Number(0)};
    e[k] = Number(1);
    if (!dot(l.coeffs(), e).is_zero()) {
      ref = e;
      break;
    }
  }
  auto det3 = [&](const ProjPoint& p, const ProjPoint& q) { return dot(cross(p.coords(), q.coords()), ref); };
  return (det3(a, c) * det3(b, d)) / (det3(a, d) * det3(b, c));
}

}  // namespace straightedge
