#include "straightedge/sigma.hpp"

#include <cmath>

namespace straightedge {

namespace {

bool in_subfield(const Real& r, const TowerPtr& sub) {
  if (r.is_rational()) return true;
  if (!sub) return false;
  return Tower::merge(r.tower(), sub)->degree() == sub->degree();
}

Rational nearest(double v, long den) { return Rational(static_cast<long>(std::llround(v * static_cast<double>(den)))) / Rational(den); }

}  // namespace

Vec3 scale_first(const Vec3& v) {
  for (int k = 0; k < 3; ++k) {
    if (!v[k].is_zero()) {
      Number inv = v[k].inverse();
      Vec3 out{v[0] * inv, v[1] * inv, v[2] * inv};
      out[k] = Number(1);
      return out;
    }
  }
  return v;
}

SigmaSpec SigmaSpec::rational(std::optional<ProjMap> frame) {
  return SigmaSpec(Kind::Rational, "rational", std::move(frame));
}

SigmaSpec SigmaSpec::tower_witnessed(std::optional<ProjMap> frame) {
  return SigmaSpec(Kind::TowerWitnessed, "tower-witnessed", std::move(frame));
}

SigmaSpec SigmaSpec::subfield(std::vector<Rational> radicands, std::optional<ProjMap> frame) {
  SigmaSpec s(Kind::Subfield, "subfield", std::move(frame));
  TowerPtr t;
  for (const Rational& r : radicands) {
    if (r <= 0) throw std::invalid_argument("subfield radicands must be positive");
    const Real root = Real(r).sqrt();
    if (root.tower()) t = t ? Tower::merge(t, root.tower()) : root.tower();
  }
  s.radicands_ = std::move(radicands);
  s.subfield_ = t;
  return s;
}

SigmaSpec SigmaSpec::custom(std::string name, std::function<bool(const Number&)> accepts,
                            std::optional<ProjMap> frame) {
  SigmaSpec s(Kind::Custom, std::move(name), std::move(frame));
  s.custom_ = std::move(accepts);
  return s;
}

bool SigmaSpec::accepts_value(const Number& v) const {
  if (!v.is_real()) return false;
  switch (kind_) {
    case Kind::Rational:
      return v.real().is_rational();
    case Kind::TowerWitnessed:
      return true;
    case Kind::Subfield:
      return in_subfield(v.real(), subfield_);
    case Kind::Custom:
      return custom_(v);
  }
  return false;
}

bool SigmaSpec::accepts(const ProjPoint& p) const { return p.is_real() && accepts_image(to_image(p)); }

bool SigmaSpec::accepts_image(const ProjPoint& img) const {
  if (!img.is_real()) return false;
  for (const Number& c : img.normalized())
    if (!accepts_value(c)) return false;
  return true;
}

bool SigmaSpec::accepts(const ProjLine& l) const {
  if (!l.is_real()) return false;
  const ProjLine img = frame_ ? frame_->apply(l) : l;
  for (const Number& c : scale_first(img.coeffs()))
    if (!accepts_value(c)) return false;
  return true;
}

bool SigmaSpec::accepts(const Conic& c) const {
  const Conic img = frame_ ? frame_->apply(c) : c;
  std::array<Number, 6> k = img.coefficients();
  std::size_t lead = 0;
  while (lead < 6 && k[lead].is_zero()) ++lead;
  if (lead == 6) return false;
  const Number inv = k[lead].inverse();
  for (const Number& v : k)
    if (!accepts_value(v * inv)) return false;
  return true;
}

ProjPoint SigmaSpec::sample(std::mt19937_64& rng) const {
  std::uniform_int_distribution<long> num(-80, 80);
  std::uniform_int_distribution<long> den(1, 17);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const ProjPoint img = ProjPoint::affine(Number(make_rational(num(rng), den(rng))),
                                            Number(make_rational(num(rng), den(rng))));
    const ProjPoint p = from_image(img);
    if (!p.is_finite()) continue;
    if (kind_ == Kind::Custom && !accepts(p)) continue;
    return ProjPoint(p.normalized());
  }
  throw std::runtime_error("sigma sampling failed: " + describe());
}

std::optional<ProjPoint> SigmaSpec::approximate(double x, double y, double tol) const {
  double u = x, v = y;
  if (frame_) {
    const Mat3& a = frame_->matrix();
    const double in[3] = {x, y, 1.0};
    double out[3];
    for (int i = 0; i < 3; ++i) {
      out[i] = 0;
      for (int j = 0; j < 3; ++j) out[i] += a(i, j).approx() * in[j];
    }
    if (out[2] == 0) return std::nullopt;
    u = out[0] / out[2];
    v = out[1] / out[2];
  }
  for (long den = 1; den <= (1L << 40); den = den * 2 + 1) {
    const ProjPoint img = ProjPoint::affine(Number(nearest(u, den)), Number(nearest(v, den)));
    const ProjPoint p = from_image(img);
    if (!p.is_finite()) continue;
    const double dx = p.x().approx() - x, dy = p.y().approx() - y;
    if (std::hypot(dx, dy) < tol && accepts(p)) return ProjPoint(p.normalized());
  }
  return std::nullopt;
}

std::string SigmaSpec::describe() const {
  std::string out = name_;
  if (kind_ == Kind::Subfield) {
    out += "(";
    for (std::size_t i = 0; i < radicands_.size(); ++i) out += (i ? ", " : "") + radicands_[i].get_str();
    out += ")";
  }
  if (frame_) out += " under a frame map";
  return out;
}

}  // namespace straightedge
