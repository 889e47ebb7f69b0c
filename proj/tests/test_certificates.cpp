#include <cmath>
#include <complex>

#include "doctest.h"
#include "straightedge/certificates.hpp"

using namespace straightedge;

namespace {

RationalPoly poly(std::vector<long> high_first) {
  std::vector<Rational> c;
  for (long v : high_first) c.emplace_back(v);
  return RationalPoly::from_high(c);
}

Number q(long n, long d = 1) { return Number::rational(n, d); }

double eval(const RationalPoly& p, double x) {
  double acc = 0;
  for (int i = p.degree(); i >= 0; --i) acc = acc * x + p.coeff(i).get_d();
  return acc;
}

std::complex<double> eval(const RationalPoly& p, std::complex<double> x) {
  std::complex<double> acc = 0;
  for (int i = p.degree(); i >= 0; --i) acc = acc * x + p.coeff(i).get_d();
  return acc;
}

// all complex roots by Durand-Kerner iteration
std::vector<std::complex<double>> complex_roots(const RationalPoly& p) {
  const RationalPoly m = p.monic();
  const int n = m.degree();
  std::vector<std::complex<double>> z(n);
  for (int i = 0; i < n; ++i) z[i] = std::pow(std::complex<double>(0.4, 0.9), i);
  for (int it = 0; it < 500; ++it) {
    for (int i = 0; i < n; ++i) {
      std::complex<double> den = 1;
      for (int j = 0; j < n; ++j)
        if (j != i) den *= z[i] - z[j];
      z[i] -= eval(m, z[i]) / den;
    }
  }
  return z;
}

const Exclusion& exclusion_for(const Certificate& c, const std::string& target) {
  for (const auto& e : c.exclusions)
    if (e.target == target) return e;
  throw std::runtime_error("no exclusion for " + target);
}

}  // namespace

TEST_CASE("obstructions are recomputed from scratch") {
  CHECK(Obstruction{Obstruction::Kind::Cubic, poly({1, -4, -2, 4})}.revalidate());
  CHECK_FALSE(Obstruction{Obstruction::Kind::Cubic, poly({1, 0, -1, 0})}.revalidate());
  CHECK(Obstruction{Obstruction::Kind::Quartic, poly({1, 0, 2, 1, -1})}.revalidate());
  // (t^2 - 2)(t^2 - 3) has no rational root but splits into quadratics
  CHECK_FALSE(Obstruction{Obstruction::Kind::Quartic, poly({1, 0, -5, 0, 6})}.revalidate());
  // t^4 + 1 is irreducible, yet its roots are eighth roots of unity
  CHECK_FALSE(Obstruction{Obstruction::Kind::Quartic, poly({1, 0, 0, 0, 1})}.revalidate());
  CHECK(Obstruction{Obstruction::Kind::NoRational, poly({1, 0, -2})}.revalidate());
  CHECK_FALSE(Obstruction{Obstruction::Kind::NoRational, poly({4, 0, -1})}.revalidate());
  CHECK_FALSE(Obstruction{Obstruction::Kind::Cubic, poly({1, 0, -2})}.revalidate());

  const std::string text = Obstruction{Obstruction::Kind::Quartic, poly({1, 0, 2, 1, -1})}.transcript();
  CHECK(text.find("resolvent cubic") != std::string::npos);
  CHECK(text.find("no root lies") != std::string::npos);
  CHECK(Obstruction{Obstruction::Kind::Cubic, poly({1, 0, -1, 0})}.transcript().find("refused") != std::string::npos);
}

TEST_CASE("rational points around a circle and a diagonal") {
  // the circle is known through 100 rational points on it, not as a curve
  Scene s;
  for (long m = 1; m <= 100; ++m) {
    const ProjPoint p = ProjPoint::affine(q(m * m - 1, m * m + 1), q(2 * m, m * m + 1));
    REQUIRE(Conic::unit_circle().contains(p));
    s.add("p" + std::to_string(m), p);
  }
  s.add("diagonal", ProjLine(q(1), q(-1), q(0)));
  const SigmaSpec sigma = SigmaSpec::rational();
  const SigmaReport rep = verify_sigma(sigma, s, 500, 1);
  MESSAGE(rep.to_text());
  CHECK(rep.passed());
  const Number h = q(2).real_sqrt() / q(2);
  CHECK_FALSE(sigma.accepts(ProjPoint::affine(h, h)));
  CHECK_FALSE(sigma.accepts(ProjPoint::affine(-h, -h)));
  CHECK(Conic::unit_circle().contains(ProjPoint::affine(h, h)));
}

TEST_CASE("odd denominators are not closed under meets") {
  const SigmaSpec odd = SigmaSpec::custom("odd-denominator", [](const Number& v) {
    return v.is_rational() && mpz_odd_p(v.real().rational_value().get_den_mpz_t());
  });
  // lines y = x and 3x + y = 3 through odd-denominator points meet at (3/4, 3/4)
  for (auto p : {ProjPoint::affine(q(0), q(0)), ProjPoint::affine(q(1), q(1)), ProjPoint::affine(q(1), q(0)),
                 ProjPoint::affine(q(0), q(3))})
    CHECK(odd.accepts(p));
  const ProjPoint m = meet(ProjLine(q(1), q(-1), q(0)), ProjLine(q(3), q(1), q(-3)));
  CHECK(m == ProjPoint::affine(q(3, 4), q(3, 4)));
  CHECK_FALSE(odd.accepts(m));

  const SigmaReport rep = verify_sigma(odd, Scene{}, 500, 1);
  CHECK_FALSE(rep.passed());
  CHECK(rep.violation().rfind("meets:", 0) == 0);
}

TEST_CASE("verify_sigma is a function of its arguments") {
  const Certificate c = scenario_midpoint();
  CHECK(verify_sigma(c.sigma, c.configuration, 50, 9).to_text() ==
        verify_sigma(c.sigma, c.configuration, 50, 9).to_text());
}

TEST_CASE("midpoint frame") {
  const Certificate c = scenario_midpoint();
  const SigmaSpec& s = c.sigma;
  CHECK(s.to_image(ProjPoint::affine(q(0), q(0))) == ProjPoint::affine(q(0), q(0)));
  CHECK(s.to_image(ProjPoint::affine(q(1), q(0))) == ProjPoint::affine(q(1), q(0)));
  // x / (x + sqrt2 (1 - x)) at x = 1/2
  const Number r2 = q(2).real_sqrt();
  const Number expected = q(1, 2) / (q(1, 2) + r2 * q(1, 2));
  CHECK(expected == r2 - q(1));
  const ProjPoint img = s.to_image(ProjPoint::affine(q(1, 2), q(0)));
  CHECK(img.x() == expected);
  CHECK_FALSE(img.x().is_rational());
  const auto rep = check_certificate(c, 500, 1);
  MESSAGE(rep.to_text());
  CHECK(rep.passed());
}

TEST_CASE("hilbert frame kept symbolic") {
  const Certificate c = scenario_hilbert();
  const RationalPoly cubic = poly({1, 0, 1, -1});
  // map [[1, 0, r], [0, k, 0], [r, 0, 1]] with k^2 = 1 - r^2 on x^2 + y^2 - z^2
  const RationalPoly r = poly({1, 0});
  const RationalPoly one = poly({1});
  const RationalPoly k2 = one - r * r;
  const RationalPoly xx = one * one - r * r, yy = k2, zz = r * r - one * one, xz = r - r;
  CHECK(xx == k2);
  CHECK(yy == k2);
  CHECK(zz == -k2);
  CHECK(xz.is_zero());
  // scale 1 - r^2 and the image x = r of the center are nonzero: the cubic has no root at 0, 1, -1
  for (long v : {0L, 1L, -1L}) CHECK(cubic.eval(Rational(v)) != 0);
  CHECK(exclusion_for(c, "center").annihilator == cubic);
  CHECK(check_certificate(c, 500, 1).passed());
}

TEST_CASE("perpendicular lines through the skewed rational set") {
  const Certificate c = scenario_perpendicular();
  const Number r3 = q(3).real_sqrt();
  CHECK((q(1) + r3) * (q(1) - r3) == q(-2));
  const auto arg = slope_argument(c.sigma);
  REQUIRE(arg.has_value());
  CHECK(arg->base_slope == 1);
  CHECK(arg->scale_square == 3);
  CHECK(arg->perpendicular_poly == poly({3, 0, -2}));
  CHECK(arg->horizontal_poly == poly({3, 0, -1}));
  CHECK(rational_roots(arg->horizontal_poly).roots.empty());
  // a sampled Σ-line has slope 1 + sqrt3 q
  std::mt19937_64 rng(4);
  const ProjPoint a = c.sigma.sample(rng), b = c.sigma.sample(rng);
  const Number slope = (b.y() - a.y()) / (b.x() - a.x());
  CHECK(((slope - q(1)) / r3).is_rational());

  const SlopeScan scan = scan_slope_products(c.sigma, 500, 3);
  CHECK(scan.pairs == 500);
  CHECK(scan.products_minus_one == 0);
  const auto rep = check_certificate(c, 500, 1);
  MESSAGE(rep.to_text());
  CHECK(rep.passed());

  Configuration cross;
  cross.add(ProjLine(q(1), q(-1), q(0)), 0);
  cross.add(ProjLine(q(2), q(1), q(5)), 0);
  CHECK_FALSE(find_perpendicular_pair(cross).has_value());
  cross.add(ProjLine(q(3), q(3), q(1)), 0);
  CHECK(find_perpendicular_pair(cross).has_value());
}

TEST_CASE("common tangent pipeline") {
  const TangentPipeline tp = tangent_pipeline();
  const RationalPoly t = poly({1, 0});
  const RationalPoly b = poly({4}) * t * (t * t - poly({1})) + poly({2});
  const RationalPoly a = poly({4, 0, 1}), c = (t * t - poly({1})) * (t * t - poly({1}));
  const RationalPoly p = poly({1, -4, -2, 4});
  CHECK(b * b - poly({4}) * a * c == poly({-4}) * t * p);
  CHECK(tp.a == a);
  CHECK(tp.b == b);
  CHECK(tp.c == c);
  CHECK(tp.discriminant == poly({-4}) * t * p);
  CHECK(tp.cubic == p);
  CHECK(tp.cofactor == -4);
  REQUIRE(tp.roots.size() == 3);
  const double expected[3] = {-1.10, 0.85, 4.25};
  for (int i = 0; i < 3; ++i) {
    const double mid = Rational((tp.roots[i].lo + tp.roots[i].hi) / 2).get_d();
    CHECK(std::abs(mid - expected[i]) < 0.01);
  }

  const Certificate cert = scenario_theorem2();
  const Exclusion& touch = exclusion_for(cert, "circle-touch");
  for (const auto& iv : tp.roots) {
    double r = Rational((iv.lo + iv.hi) / 2).get_d();
    for (int it = 0; it < 20; ++it) r -= eval(p, r) / eval(p.derivative(), r);
    // y = 2r x - r^2 is tangent to the circle of radius 1 about (1, -1)
    CHECK(std::abs(std::abs(2 * r * 1 + 1 - r * r) / std::sqrt(4 * r * r + 1) - 1) < 1e-6);
    const double x = (2 * r * r * r - 2 * r + 1) / (4 * r * r + 1);
    const double y = 2 * r * x - r * r;
    CHECK(std::abs((x - 1) * (x - 1) + (y + 1) * (y + 1) - 1) < 1e-6);
    CHECK(std::abs(eval(touch.annihilator, x)) < 1e-6);
  }
  const auto rep = check_certificate(cert, 500, 1);
  MESSAGE(rep.to_text());
  CHECK(rep.passed());
}

TEST_CASE("pencil members") {
  const Certificate base = scenario_theorem2();
  const Certificate same = scenario_pencil({{q(1), q(0)}});
  CHECK(same.configuration.to_text() == base.configuration.to_text());
  CHECK_THROWS_AS(scenario_pencil({{q(0), q(0)}}), std::invalid_argument);
  for (const auto& pair : {std::pair<Number, Number>{q(1), q(1)}, {q(2).real_sqrt(), q(1)}}) {
    const Certificate c = scenario_pencil({pair});
    CHECK(c.configuration.decls.size() == 3);
    const auto rep = check_certificate(c, 500, 2);
    MESSAGE(rep.to_text());
    CHECK(rep.passed());
  }
}

TEST_CASE("erased intersections") {
  const Certificate c = scenario_erased_intersections();
  const RationalPoly quartic = poly({1, 0, 2, 1, -1});
  CHECK(isolate_real_roots(quartic, Rational(1, 100)).size() == 2);
  CHECK(resolvent_cubic(quartic) == poly({1, -2, 4, -9}));
  CHECK(exclusion_for(c, "crossing").annihilator == quartic);

  // independent numeric oracle: the non-real common points z, conj(z) span a line
  // whose poles are the center images
  std::complex<double> z;
  for (auto r : complex_roots(quartic))
    if (r.imag() > 1e-6) z = r;
  REQUIRE(std::abs(z.imag()) > 1e-6);
  const double s = 2 * z.real(), pz = std::norm(z);
  const double line[3] = {s, -1, -pz};
  auto pole_x = [&](const double m[3][3]) {
    // solve m * p = line by Cramer's rule
    auto det = [](const double a[3][3]) {
      return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
             a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    };
    double mx[3][3], mz[3][3];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) mx[i][j] = mz[i][j] = m[i][j];
    for (int i = 0; i < 3; ++i) {
      mx[i][0] = line[i];
      mz[i][2] = line[i];
    }
    return det(mx) / det(mz);
  };
  const double first[3][3] = {{1, 0, 0}, {0, 0, -0.5}, {0, -0.5, 0}};
  const double second[3][3] = {{1, 0, 0.5}, {0, 1, 0.5}, {0.5, 0.5, -1}};
  const double x1 = pole_x(first), x2 = pole_x(second);
  CHECK(std::abs(x1 - s / 2) < 1e-9);
  const Exclusion& e1 = exclusion_for(c, "center-1");
  const Exclusion& e2 = exclusion_for(c, "center-2");
  CHECK(std::abs(eval(e1.annihilator, x1)) < 1e-6);
  CHECK(std::abs(eval(e2.annihilator, x2)) < 1e-6);
  CHECK(e1.annihilator.monic() == poly({64, 0, 64, 0, 32, 0, -1}).monic());

  const auto rep = check_certificate(c, 500, 1);
  MESSAGE(rep.to_text());
  CHECK(rep.passed());
  CHECK(rep.conditions[2].name == "initial objects");
  CHECK(rep.conditions[2].detail.rfind("2 objects", 0) == 0);
}

TEST_CASE("certificates survive a JSON round trip") {
  for (const auto& name : scenario_names()) {
    CAPTURE(name);
    const Certificate c = scenario_by_name(name);
    const std::string text = certificate_to_json(c);
    const Certificate back = certificate_from_json(text);
    CHECK(certificate_to_json(back) == text);
    CHECK(back.targets.size() == c.targets.size());
  }
  CHECK(check_certificate(certificate_from_json(certificate_to_json(scenario_midpoint())), 100, 1).passed());
  CHECK_THROWS_AS(certificate_from_json("{\"scenario\": 1}"), std::invalid_argument);
  CHECK_THROWS_AS(scenario_by_name("nowhere"), std::invalid_argument);
}

TEST_CASE("tampered certificates fail") {
  // midpoint target moved onto A, a member of Σ
  std::string text = certificate_to_json(scenario_midpoint());
  const std::string from = "\"1/2\",\n        \"0\",\n        \"1\"";
  REQUIRE(text.find(from) != std::string::npos);
  text.replace(text.find(from), from.size(), "\"0\",\n        \"0\",\n        \"1\"");
  const auto moved = check_certificate(certificate_from_json(text), 50, 1);
  CHECK_FALSE(moved.passed());
  CHECK(moved.to_text().find("targets excluded: FAIL") != std::string::npos);

  // hilbert target moved onto the rational point x = 1/2
  Certificate h = scenario_hilbert();
  h.targets[0].x_root = poly({2, -1});
  CHECK_FALSE(check_certificate(h, 50, 1).passed());

  // a witness that no longer holds
  Certificate w = scenario_theorem2();
  w.obstructions[0].poly = poly({1, -6, 11, -6});
  CHECK_FALSE(check_certificate(w, 50, 1).passed());
}

TEST_CASE("closure under the certificate's adversary misses the excluded targets") {
  for (const char* name : {"midpoint", "perpendicular", "hilbert"}) {
    CAPTURE(name);
    const DualityReport rep = run_duality(scenario_by_name(name), 7);
    MESSAGE(rep.to_text());
    CHECK(rep.passed());
    CHECK(rep.closure.generations.size() == 5);
  }
}
