#include <random>

#include "doctest.h"
#include "straightedge/projective.hpp"

using namespace straightedge;

namespace {

Number q(long n, long d = 1) { return Number::rational(n, d); }

ProjPoint pt(long x, long y, long z = 1) { return ProjPoint(q(x), q(y), q(z)); }

ProjPoint random_point(std::mt19937& rng) {
  std::uniform_int_distribution<long> num(-12, 12), den(1, 6);
  return ProjPoint::affine(q(num(rng), den(rng)), q(num(rng), den(rng)));
}

Conic random_conic(std::mt19937& rng) {
  std::uniform_int_distribution<long> num(-5, 5);
  for (;;) {
    Conic c = Conic::from_coefficients({q(num(rng)), q(num(rng)), q(num(rng)), q(num(rng)), q(num(rng)), q(num(rng))});
    if (!c.is_degenerate()) return c;
  }
}

ProjMap random_map(std::mt19937& rng) {
  std::uniform_int_distribution<long> num(-4, 4);
  for (;;) {
    Mat3 m;
    for (auto& row : m.m) {
      for (auto& x : row) x = q(num(rng));
    }
    if (!m.det().is_zero()) return ProjMap(m);
  }
}

}  // namespace

TEST_CASE("join and meet examples") {
  CHECK(join(pt(0, 0), pt(1, 0)) == ProjLine(q(0), q(1), q(0)));
  CHECK(meet(ProjLine(q(0), q(1), q(0)), ProjLine(q(0), q(1), q(-1))) == pt(1, 0, 0));
  ProjPoint m = meet(join(pt(0, 0), pt(1, 1)), join(pt(1, 0), pt(0, 1)));
  CHECK(m == ProjPoint(q(1, 2), q(1, 2), q(1)));
  CHECK(m.x() == q(1, 2));
  CHECK_THROWS_AS(join(pt(1, 2), pt(2, 4, 2)), GeometryError);
  CHECK_THROWS_AS(meet(ProjLine(q(1), q(1), q(1)), ProjLine(q(2), q(2), q(2))), GeometryError);
}

TEST_CASE("pole and polar examples") {
  Conic unit = Conic::unit_circle();
  CHECK(pole(ProjLine::at_infinity(), unit) == pt(0, 0));
  CHECK(center(unit) == pt(0, 0));
  CHECK(polar(pt(0, 2), unit) == ProjLine(q(0), q(2), q(-1)));
  // polar of a point on the circle is tangent
  ProjLine t = polar(pt(0, 1), unit);
  auto hit = line_conic_intersect(t, unit);
  CHECK(hit.tangent);
  CHECK(hit.multiplicity(0) == 2);
  CHECK(hit.points.at(0) == pt(0, 1));

  Mat3 flat = Mat3::diag(q(1), q(0), q(-1));
  CHECK_THROWS_AS(polar(pt(0, 1), Conic(flat)), GeometryError);
}

TEST_CASE("line-conic intersection examples") {
  Conic unit = Conic::unit_circle();
  auto diag = line_conic_intersect(ProjLine(q(1), q(-1), q(0)), unit);
  REQUIRE(diag.points.size() == 2);
  CHECK_FALSE(diag.tangent);
  Number h = Number(2).sqrt() / q(2);
  CHECK(diag.points[0] == ProjPoint::affine(-h, -h));
  CHECK(diag.points[1] == ProjPoint::affine(h, h));

  auto tan = line_conic_intersect(ProjLine(q(0), q(1), q(-1)), unit);
  CHECK(tan.tangent);
  REQUIRE(tan.points.size() == 1);
  CHECK(tan.points[0] == pt(0, 1));

  auto sec = line_conic_intersect(ProjLine(q(1), q(-1), q(-1)), unit);
  REQUIRE(sec.points.size() == 2);
  CHECK(sec.points[0] == pt(0, -1));
  CHECK(sec.points[1] == pt(1, 0));
  CHECK(sec.points[0].x().is_rational());

  // y = 2 misses the unit circle over the reals
  ProjLine far(q(0), q(1), q(-2));
  CHECK(line_conic_intersect(far, unit).points.empty());
  auto cplx = line_conic_intersect(far, unit, IntersectMode::Complex);
  REQUIRE(cplx.points.size() == 2);
  for (const auto& p : cplx.points) {
    CHECK_FALSE(p.is_real());
    CHECK(unit.contains(p));
    CHECK(far.contains(p));
  }

  // the line at infinity against a parabola touches it once
  Conic parabola = Conic::from_coefficients({q(1), q(0), q(0), q(0), q(-1), q(0)});
  auto inf = line_conic_intersect(ProjLine::at_infinity(), parabola);
  CHECK(inf.tangent);
  CHECK(inf.points.at(0) == pt(0, 1, 0));

  // degenerate conic containing the line
  Conic pair = Conic::from_coefficients({q(0), q(1), q(0), q(0), q(0), q(0)});  // xy = 0
  CHECK_THROWS_AS(line_conic_intersect(ProjLine(q(1), q(0), q(0)), pair), GeometryError);
}

TEST_CASE("circle detection") {
  CHECK(is_circle(Conic::unit_circle()));
  CHECK_FALSE(is_circle(Conic::from_coefficients({q(1), q(0), q(0), q(0), q(-1), q(0)})));
  // (x - 1)^2 + (y + 1)^2 - 1
  Conic alpha = Conic::from_coefficients({q(1), q(0), q(1), q(-2), q(2), q(1)});
  CHECK(is_circle(alpha));
  CHECK(alpha == Conic::circle(q(1), q(-1), q(1)));
  CHECK(center(alpha) == pt(1, -1));
  CHECK_FALSE(is_circle(Conic::from_coefficients({q(1, 4), q(0), q(1), q(0), q(0), q(-1)})));
}

TEST_CASE("map examples") {
  Conic unit = Conic::unit_circle();
  CHECK(ProjMap::identity().apply(unit) == unit);
  CHECK(ProjMap::identity().apply(pt(3, 4)) == pt(3, 4));

  ProjMap scale(Mat3::diag(q(1), q(1), q(2)));
  Conic small = scale.apply(unit);
  CHECK(small == Conic::from_coefficients({q(1), q(0), q(1), q(0), q(0), q(-1, 4)}));
  CHECK(scale.apply(center(unit)) == center(small));

  Number s3 = Number(3).sqrt();
  ProjMap shear(Mat3::from_rows({Vec3{q(1), q(0), q(0)}, Vec3{q(1), s3, q(0)}, Vec3{q(0), q(0), q(1)}}));
  CHECK(shear.apply(ProjLine(q(0), q(1), q(0))) == ProjLine(q(1), q(-1), q(0)));
  CHECK(shear.apply(pt(2, 0)) == pt(2, 2));

  CHECK_THROWS_AS(ProjMap(Mat3::diag(q(1), q(0), q(1))), GeometryError);
  CHECK(scale.then(scale.inverse()).apply(pt(5, 7)) == pt(5, 7));
}

TEST_CASE("symmetry axes examples") {
  Conic unit = Conic::unit_circle();
  auto ell = symmetry_axes(Conic::from_coefficients({q(1, 4), q(0), q(1), q(0), q(0), q(-1)}), unit);
  REQUIRE(ell.size() == 2);
  CHECK(ell[0] == ProjLine(q(0), q(1), q(0)));
  CHECK(ell[1] == ProjLine(q(1), q(0), q(0)));

  auto block = symmetry_axes(Conic::from_coefficients({q(2), q(2), q(2), q(0), q(0), q(-1)}), unit);
  REQUIRE(block.size() == 2);
  CHECK(block[0].direction() == pt(1, 1, 0));
  CHECK(block[1].direction() == pt(1, -1, 0));

  auto rot = symmetry_axes(Conic::from_coefficients({q(5), q(6), q(5), q(0), q(0), q(-8)}), unit);
  REQUIRE(rot.size() == 2);
  CHECK(rot[0] == ProjLine(q(1), q(-1), q(0)));
  CHECK(rot[1] == ProjLine(q(1), q(1), q(0)));

  CHECK_THROWS_AS(symmetry_axes(Conic::circle(q(0), q(0), q(4)), unit), GeometryError);
  auto off = symmetry_axes(Conic::circle(q(2), q(1), q(1)), unit);
  REQUIRE(off.size() == 1);
  CHECK(off[0] == ProjLine(q(1), q(-2), q(0)));
  CHECK_THROWS_AS(symmetry_axes(unit, Conic::circle(q(0), q(0), q(4))), GeometryError);
}

TEST_CASE("duality on random points") {
  std::mt19937 rng(2024);
  for (int k = 0; k < 200; ++k) {
    Conic c = random_conic(rng);
    ProjPoint p = random_point(rng);
    CHECK(pole(polar(p, c), c) == p);
  }
}

TEST_CASE("meet of joins through a common point") {
  std::mt19937 rng(5);
  int checked = 0;
  while (checked < 100) {
    ProjPoint p = random_point(rng), a = random_point(rng), b = random_point(rng);
    if (collinear(p, a, b)) continue;
    CHECK(meet(join(p, a), join(p, b)) == p);
    ++checked;
  }
}

TEST_CASE("intersections commute with maps") {
  std::mt19937 rng(99);
  for (int k = 0; k < 40; ++k) {
    ProjMap a = random_map(rng);
    Conic c = random_conic(rng);
    ProjLine l = join(random_point(rng), random_point(rng));
    auto before = line_conic_intersect(l, c, IntersectMode::Complex);
    auto after = line_conic_intersect(a.apply(l), a.apply(c), IntersectMode::Complex);
    REQUIRE(before.points.size() == after.points.size());
    CHECK(before.tangent == after.tangent);
    for (const auto& p : before.points) {
      ProjPoint img = a.apply(p);
      bool found = false;
      for (const auto& r : after.points) found = found || r == img;
      CHECK(found);
    }
    for (const auto& p : after.points) {
      CHECK(a.apply(c).contains(p));
      CHECK(a.apply(l).contains(p));
    }
  }
}

TEST_CASE("cross-ratio invariance") {
  std::mt19937 rng(17);
  for (int k = 0; k < 40; ++k) {
    ProjPoint a = random_point(rng), b = random_point(rng);
    if (a == b) continue;
    auto along = [&](long s, long t) {
      Vec3 v;
      for (int i = 0; i < 3; ++i) v[i] = q(s) * a.coords()[i] + q(t) * b.coords()[i];
      return ProjPoint(v);
    };
    ProjPoint c = along(2, 3), d = along(-1, 4);
    Number before = cross_ratio(a, b, c, d);
    ProjMap m = random_map(rng);
    CHECK(cross_ratio(m.apply(a), m.apply(b), m.apply(c), m.apply(d)) == before);
  }
  // harmonic: (0, inf; 1, -1) = -1
  CHECK(cross_ratio(pt(0, 0), pt(1, 0, 0), pt(1, 0), pt(-1, 0)) == q(-1));
}

TEST_CASE("intersection outputs satisfy both equations") {
  std::mt19937 rng(31);
  for (int k = 0; k < 60; ++k) {
    Conic c = random_conic(rng);
    ProjLine l = join(random_point(rng), random_point(rng));
    auto hit = line_conic_intersect(l, c, IntersectMode::Complex);
    for (const auto& p : hit.points) {
      CHECK(c.evaluate(p).is_zero());
      CHECK(dot(l.coeffs(), p.coords()).is_zero());
    }
  }
}
