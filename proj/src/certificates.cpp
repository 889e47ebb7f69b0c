#include "straightedge/certificates.hpp"

#include <cmath>
#include <sstream>

namespace straightedge {

namespace {

std::mt19937_64 instance_rng(std::uint64_t seed, std::size_t k) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
  return std::mt19937_64(seq);
}

std::string roots_line(const RationalRootReport& r) {
  std::ostringstream os;
  os << "rational-root candidates:";
  for (const auto& c : r.candidates) os << " " << c;
  return os.str();
}

bool proportional_poly(const RationalPoly& a, const RationalPoly& b) {
  return !a.is_zero() && !b.is_zero() && a.monic() == b.monic();
}

std::string show(const ProjPoint& p) { return p.to_string(); }

struct Failure {
  std::optional<std::string> first;
  std::size_t checked = 0;
  void record(std::string what) {
    if (!first) first = std::move(what);
  }
};

ConditionResult summarize(const std::string& name, const Failure& f, const std::string& unit) {
  if (f.first) return {name, false, *f.first};
  return {name, true, std::to_string(f.checked) + " " + unit + ", all inside"};
}

}  // namespace

const char* obstruction_kind_name(Obstruction::Kind k) {
  switch (k) {
    case Obstruction::Kind::Cubic: return "cubic";
    case Obstruction::Kind::Quartic: return "quartic";
    case Obstruction::Kind::NoRational: return "no-rational-root";
  }
  return "?";
}

bool Obstruction::revalidate() const {
  switch (kind) {
    case Kind::Cubic:
      return poly.degree() == 3 && rational_roots(poly).roots.empty();
    case Kind::Quartic:
      return poly.degree() == 4 && rational_roots(poly).roots.empty() &&
             rational_roots(resolvent_cubic(poly)).roots.empty();
    case Kind::NoRational:
      return poly.degree() >= 1 && rational_roots(poly).roots.empty();
  }
  return false;
}

std::string Obstruction::transcript() const {
  std::ostringstream os;
  os << "polynomial: " << poly.to_string() << "\n";
  const auto direct = rational_roots(poly);
  os << roots_line(direct) << "\n";
  if (!direct.roots.empty()) {
    os << "refused: " << direct.roots.front() << " is a rational root\n";
    return os.str();
  }
  os << "no candidate is a root\n";
  switch (kind) {
    case Kind::Cubic:
      if (poly.degree() != 3) return os.str() + "refused: not a cubic\n";
      os << "a cubic without rational roots is irreducible, so each root has degree 3 over Q\n";
      os << "3 does not divide 2^n, so no root lies in a quadratic tower\n";
      break;
    case Kind::Quartic: {
      if (poly.degree() != 4) return os.str() + "refused: not a quartic\n";
      const RationalPoly r = resolvent_cubic(poly);
      const auto rr = rational_roots(r);
      os << "resolvent cubic: " << r.to_string("u") << "\n" << roots_line(rr) << "\n";
      if (!rr.roots.empty()) return os.str() + "refused: the resolvent has a rational root\n";
      os << "no linear factor, and a split into two rational quadratics would give the resolvent a rational root\n";
      os << "so the quartic is irreducible with Galois group A4 or S4, whose order is divisible by 3\n";
      os << "a root of a quadratic tower has a 2-group as Galois group, so no root lies in one\n";
      break;
    }
    case Kind::NoRational:
      os << "every root is irrational\n";
      break;
  }
  return os.str();
}

bool SigmaReport::passed() const {
  for (const auto& c : conditions)
    if (!c.passed) return false;
  return true;
}

std::string SigmaReport::violation() const {
  for (const auto& c : conditions)
    if (!c.passed) return c.name + ": " + c.detail;
  return {};
}

std::string SigmaReport::to_text() const {
  std::ostringstream os;
  for (const auto& c : conditions) os << c.name << ": " << (c.passed ? "pass" : "FAIL") << " (" << c.detail << ")\n";
  return os.str();
}

SigmaReport verify_sigma(const SigmaSpec& spec, const Scene& cfg, std::size_t samples, std::uint64_t seed) {
  std::vector<ProjPoint> points;
  std::vector<ProjLine> lines;
  std::vector<Conic> curves;
  for (const auto& d : cfg.decls) {
    if (auto p = std::get_if<ProjPoint>(&d.value)) points.push_back(*p);
    if (auto l = std::get_if<ProjLine>(&d.value)) lines.push_back(*l);
    if (auto c = std::get_if<Conic>(&d.value)) curves.push_back(*c);
  }

  Failure initial;
  for (const auto& p : points) {
    ++initial.checked;
    if (!spec.accepts(p)) initial.record("given point " + show(p) + " is outside");
  }
  for (const auto& c : curves) {
    ++initial.checked;
    if (!spec.accepts(c)) initial.record("given curve " + c.to_string() + " lacks predicate coefficients");
  }

  Failure meets, cuts, density;
  std::uniform_real_distribution<double> coord(-10.0, 10.0);
  for (std::size_t k = 0; k < samples; ++k) {
    auto rng = instance_rng(seed, k);
    const std::string tag = "instance " + std::to_string(k) + ": ";
    if (!meets.first) {
      std::array<ProjPoint, 4> b{spec.sample(rng), spec.sample(rng), spec.sample(rng), spec.sample(rng)};
      if (!(b[0] == b[1]) && !(b[2] == b[3])) {
        const ProjLine l1 = join(b[0], b[1]), l2 = join(b[2], b[3]);
        const std::optional<ProjPoint> m = l1 == l2 ? std::nullopt : std::optional<ProjPoint>(meet(l1, l2));
        if (m && m->is_finite()) {
          ++meets.checked;
          if (!spec.accepts(*m))
            meets.record(tag + "meet of " + show(b[0]) + show(b[1]) + " and " + show(b[2]) + show(b[3]) + " is " +
                         show(*m) + ", outside");
        }
      }
    }
    if (!cuts.first && (!curves.empty() || !lines.empty())) {
      const ProjPoint p = spec.sample(rng), q = spec.sample(rng);
      if (!(p == q)) {
        const ProjLine l = join(p, q);
        for (const auto& c : curves) {
          try {
            for (const auto& x : line_conic_intersect(l, c).points) {
              if (!x.is_finite()) continue;
              ++cuts.checked;
              if (!spec.accepts(x))
                cuts.record(tag + "line " + show(p) + show(q) + " meets " + c.to_string() + " at " + show(x) + ", outside");
            }
          } catch (const GeometryError&) {
          }
        }
        for (const auto& g : lines) {
          if (g == l) continue;
          const ProjPoint x = meet(l, g);
          if (!x.is_finite()) continue;
          ++cuts.checked;
          if (!spec.accepts(x)) cuts.record(tag + "line " + show(p) + show(q) + " meets a given line at " + show(x) + ", outside");
        }
      }
    }
    if (!density.first) {
      const double x = coord(rng), y = coord(rng);
      ++density.checked;
      const auto near = spec.approximate(x, y, 1e-3);
      if (!near || !spec.accepts(*near) || !near->is_finite() ||
          std::hypot(near->x().approx() - x, near->y().approx() - y) > 1e-3) {
        std::ostringstream os;
        os << tag << "no member within 1e-3 of (" << x << ", " << y << ")";
        density.record(os.str());
      }
    }
  }

  SigmaReport rep;
  rep.samples = samples;
  rep.conditions.push_back(summarize("initial objects", initial, "objects"));
  rep.conditions.push_back(summarize("meets", meets, "meets"));
  rep.conditions.push_back(summarize("curve cuts", cuts, "cut points"));
  ConditionResult dens = summarize("density", density, "random reals");
  if (dens.passed) dens.detail = std::to_string(density.checked) + " random reals approximated within 1e-3";
  rep.conditions.push_back(dens);
  return rep;
}

std::string SlopeArgument::transcript() const {
  std::ostringstream os;
  os << "non-vertical Σ-lines have slope " << base_slope << " + s q with q rational and s^2 = " << scale_square << "\n";
  os << "a perpendicular pair needs q2 = -q1 and " << perpendicular_poly.to_string("q") << " = 0\n";
  os << "a vertical Σ-line is perpendicular only to a horizontal one, which needs "
     << horizontal_poly.to_string("q") << " = 0\n";
  return os.str();
}

std::optional<SlopeArgument> slope_argument(const SigmaSpec& spec) {
  if (spec.kind() != SigmaSpec::Kind::Rational || !spec.frame()) return std::nullopt;
  const Mat3& inv = spec.frame()->inverse_matrix();
  if (!inv(2, 0).is_zero() || !inv(2, 1).is_zero() || inv(2, 2).is_zero()) return std::nullopt;
  if (inv(0, 0).is_zero() || !inv(0, 1).is_zero()) return std::nullopt;
  const Number m = inv(1, 0) / inv(0, 0);
  const Number s = inv(1, 1) / inv(0, 0);
  const Number d = s * s;
  if (!m.is_rational() || !d.is_rational() || s.is_rational()) return std::nullopt;
  SlopeArgument a;
  a.base_slope = m.real().rational_value();
  a.scale_square = d.real().rational_value();
  a.perpendicular_poly = RationalPoly({-(a.base_slope * a.base_slope + 1), Rational(0), a.scale_square});
  a.horizontal_poly = RationalPoly({-(a.base_slope * a.base_slope), Rational(0), a.scale_square});
  return a;
}

SlopeScan scan_slope_products(const SigmaSpec& spec, std::size_t pairs, std::uint64_t seed) {
  SlopeScan scan;
  std::mt19937_64 rng(seed);
  auto slope = [&]() {
    for (;;) {
      const ProjPoint p = spec.sample(rng), q = spec.sample(rng);
      const Number dx = q.x() - p.x();
      if (!dx.is_zero()) return (q.y() - p.y()) / dx;
    }
  };
  for (; scan.pairs < pairs; ++scan.pairs)
    if (slope() * slope() == Number(-1)) ++scan.products_minus_one;
  return scan;
}

std::optional<std::pair<ProjLine, ProjLine>> find_perpendicular_pair(const Configuration& cfg) {
  Configuration normals;
  std::vector<std::size_t> owner;
  for (std::size_t i = 0; i < cfg.lines().size(); ++i) {
    const Vec3& c = cfg.lines()[i].line.coeffs();
    if (c[0].is_zero() && c[1].is_zero()) continue;
    if (normals.add(ProjPoint(c[0], c[1], Number(0)), 0).second) owner.push_back(i);
  }
  for (std::size_t i = 0; i < cfg.lines().size(); ++i) {
    const Vec3& c = cfg.lines()[i].line.coeffs();
    if (c[0].is_zero() && c[1].is_zero()) continue;
    if (auto j = normals.find(ProjPoint(-c[1], c[0], Number(0))))
      return std::make_pair(cfg.lines()[i].line, cfg.lines()[owner[*j]].line);
  }
  return std::nullopt;
}

bool CertificateCheck::passed() const {
  for (const auto& c : conditions)
    if (!c.passed) return false;
  return true;
}

std::string CertificateCheck::to_text() const {
  std::ostringstream os;
  for (const auto& c : conditions) os << c.name << ": " << (c.passed ? "pass" : "FAIL") << " (" << c.detail << ")\n";
  os << "verdict: " << (passed() ? "pass" : "fail") << "\n";
  return os.str();
}

namespace {

std::optional<std::string> exclusion_problem(const Certificate& cert, const Exclusion& ex) {
  if (ex.obstruction >= cert.obstructions.size()) return "refers to a missing obstruction";
  const Obstruction& ob = cert.obstructions[ex.obstruction];
  if (!ob.revalidate()) return "its obstruction does not hold";
  const bool towers = cert.sigma.kind() != SigmaSpec::Kind::Rational;
  if (towers && !ob.excludes_towers()) return "the obstruction only rules out rationals but Σ holds tower values";
  if (ex.annihilator.degree() < 1) return "empty annihilator";
  if (!compose(ob.poly, ex.link).divmod(ex.annihilator).second.is_zero())
    return "the link does not carry roots of the annihilator to roots of the obstruction";
  const Target* t = nullptr;
  for (const auto& cand : cert.targets)
    if (cand.name == ex.target) t = &cand;
  if (!t) return "names no target";
  if (ex.coordinate != 0 && ex.coordinate != 1) return "bad coordinate index";
  if (t->point) {
    const ProjPoint img = cert.sigma.to_image(*t->point);
    if (!img.is_finite()) return "target image is at infinity";
    const Number v = ex.coordinate == 0 ? img.x() : img.y();
    if (!ex.annihilator.eval(v).is_zero()) return "annihilator does not vanish at the target's image coordinate";
    return std::nullopt;
  }
  if (cert.sigma.frame()) return "algebraic targets need image coordinates";
  if (ex.coordinate != 0) return "algebraic targets fix the x-coordinate only";
  if (!ex.annihilator.divmod(t->x_root).second.is_zero()) return "annihilator does not vanish at the target";
  return std::nullopt;
}

}  // namespace

CertificateCheck check_certificate(const Certificate& cert, std::size_t samples, std::uint64_t seed) {
  CertificateCheck out;
  {
    ConditionResult r{"obstructions", true, ""};
    for (std::size_t i = 0; i < cert.obstructions.size(); ++i) {
      if (!cert.obstructions[i].revalidate()) {
        r.passed = false;
        r.detail = "obstruction " + std::to_string(i) + " (" + cert.obstructions[i].poly.to_string() + ") fails";
        break;
      }
    }
    if (r.passed) r.detail = std::to_string(cert.obstructions.size()) + " revalidated";
    out.conditions.push_back(r);
  }
  {
    ConditionResult r{"targets excluded", true, ""};
    for (const auto& t : cert.targets) {
      if (t.point && cert.sigma.accepts(*t.point)) {
        r.passed = false;
        r.detail = "target " + t.name + " satisfies the predicate";
        break;
      }
      bool covered = false;
      std::string why = "no exclusion";
      for (const auto& ex : cert.exclusions) {
        if (ex.target != t.name) continue;
        if (auto problem = exclusion_problem(cert, ex)) why = *problem;
        else covered = true;
      }
      if (!covered) {
        r.passed = false;
        r.detail = "target " + t.name + ": " + why;
        break;
      }
    }
    if (r.passed) r.detail = std::to_string(cert.targets.size()) + " targets outside Σ";
    if (cert.targets.empty() && !cert.perpendicular_obstruction) r = {r.name, false, "nothing to exclude"};
    out.conditions.push_back(r);
  }
  if (cert.perpendicular_obstruction) {
    ConditionResult r{"perpendicular lines", true, ""};
    const auto arg = slope_argument(cert.sigma);
    const std::size_t idx = *cert.perpendicular_obstruction;
    if (!arg) {
      r = {r.name, false, "frame does not give the slope structure"};
    } else if (idx >= cert.obstructions.size() || !cert.obstructions[idx].revalidate() ||
               !proportional_poly(cert.obstructions[idx].poly, arg->perpendicular_poly)) {
      r = {r.name, false, "no valid obstruction for " + arg->perpendicular_poly.to_string("q")};
    } else if (arg->base_slope == 0 || !rational_roots(arg->horizontal_poly).roots.empty()) {
      r = {r.name, false, "a horizontal Σ-line exists"};
    } else {
      const SlopeScan scan = scan_slope_products(cert.sigma, samples, seed);
      r.passed = scan.products_minus_one == 0;
      r.detail = arg->perpendicular_poly.to_string("q") + " and " + arg->horizontal_poly.to_string("q") +
                 " have no rational roots; " + std::to_string(scan.pairs) + " sampled slope pairs, " +
                 std::to_string(scan.products_minus_one) + " with product -1";
    }
    out.conditions.push_back(r);
  }
  for (auto& c : verify_sigma(cert.sigma, cert.configuration, samples, seed).conditions) out.conditions.push_back(c);
  return out;
}

bool DualityReport::passed() const {
  for (const auto& t : closure.targets)
    if (t.reached_at) return false;
  return !closure.sigma_violation && !perpendicular_pair;
}

std::string DualityReport::to_text() const {
  std::string out = closure.to_text();
  if (perpendicular_pair) out += "perpendicular lines: " + *perpendicular_pair + "\n";
  out += std::string("duality: ") + (passed() ? "pass" : "fail") + "\n";
  return out;
}

ClosureLimits duality_limits(const Certificate& cert) {
  ClosureLimits lim;
  if (cert.sigma.kind() != SigmaSpec::Kind::Rational) lim.work_budget = 1500;
  return lim;
}

DualityReport run_duality(const Certificate& cert, std::uint64_t seed, int depth, std::optional<ClosureLimits> limits) {
  ClosureOptions opts;
  opts.depth = depth;
  opts.limits = limits ? *limits : duality_limits(cert);
  bool exact_targets = true;
  for (const auto& t : cert.targets) exact_targets = exact_targets && t.point.has_value();
  if (cert.sigma.frame() && exact_targets) opts.chart = cert.sigma.frame();
  Configuration final_cfg;
  const bool want_lines = cert.perpendicular_obstruction.has_value();
  DualityReport rep;
  rep.closure = run_general_algorithm(Configuration::from_scene(cert.configuration),
                                      Adversary::sigma_dense(cert.sigma, seed), cert.targets, opts,
                                      want_lines ? &final_cfg : nullptr);
  if (want_lines) {
    if (auto pair = find_perpendicular_pair(final_cfg))
      rep.perpendicular_pair = pair->first.to_string() + " and " + pair->second.to_string();
  }
  return rep;
}

}  // namespace straightedge
