#include <random>

#include "doctest.h"
#include "straightedge/constructions.hpp"

using namespace straightedge;

namespace {

Number q(long n, long d = 1) { return Number::rational(n, d); }
ProjPoint pt(const Number& x, const Number& y) { return ProjPoint::affine(x, y); }
ProjPoint pt(long x, long y) { return ProjPoint::affine(q(x), q(y)); }

void check_replay(const Trace& t) {
  auto r = t.replay();
  CHECK_MESSAGE(r.ok, r.detail);
  Trace back = Trace::parse(t.to_text());
  CHECK(back.moves.size() == t.moves.size());
  CHECK(back.replay().ok);
  for (const auto& c : t.claims) CHECK(same_object(back.claim(c.name), t.claim(c.name)));
}

ProjMap random_map(std::mt19937& rng) {
  std::uniform_int_distribution<long> num(-3, 3);
  for (;;) {
    Mat3 m;
    for (auto& row : m.m) {
      for (auto& x : row) x = q(num(rng));
    }
    if (!m.det().is_zero()) return ProjMap(m);
  }
}

}  // namespace

TEST_CASE("parallel through a point from a bisected segment") {
  auto r = parallel_from_midpoint(pt(0, 0), pt(1, 0), pt(q(1, 2), q(0)), pt(3, 2));
  CHECK(r.line == ProjLine(q(0), q(1), q(-2)));
  check_replay(r.trace);
  auto r2 = parallel_from_midpoint(pt(0, 0), pt(1, 0), pt(q(1, 2), q(0)), pt(0, 1));
  CHECK(r2.line == ProjLine(q(0), q(1), q(-1)));
  check_replay(r2.trace);
  CHECK_THROWS_AS(parallel_from_midpoint(pt(0, 0), pt(1, 0), pt(q(1, 2), q(0)), pt(5, 0)), GeometryError);
  CHECK_THROWS_AS(parallel_from_midpoint(pt(0, 0), pt(1, 0), pt(q(1, 3), q(0)), pt(5, 1)), GeometryError);
}

TEST_CASE("midpoint from a parallel line") {
  auto a = midpoint_from_parallel(pt(0, 0), pt(1, 0), ProjLine(q(0), q(1), q(-1)));
  CHECK(a.point == pt(q(1, 2), q(0)));
  check_replay(a.trace);
  auto b = midpoint_from_parallel(pt(0, 0), pt(2, 2), ProjLine(q(1), q(-1), q(1)));
  CHECK(b.point == pt(1, 1));
  auto c = midpoint_from_parallel(pt(1, 3), pt(5, 3), ProjLine(q(0), q(1), q(0)));
  CHECK(c.point == pt(3, 3));
  check_replay(c.trace);
  CHECK_THROWS_AS(midpoint_from_parallel(pt(0, 0), pt(1, 0), ProjLine(q(1), q(1), q(1))), GeometryError);
}

TEST_CASE("centers of intersecting circles") {
  Conic c1 = Conic::unit_circle(), c2 = Conic::circle(q(1), q(0), q(1));
  Number h = Number(3).sqrt() / q(2);
  auto r = centers_of_intersecting_circles(c1, c2, pt(q(1, 2), h), pt(q(1, 2), -h));
  CHECK(r.first == pt(0, 0));
  CHECK(r.second == pt(1, 0));
  CHECK(r.first == center(c1));
  check_replay(r.trace);

  Conic c3 = Conic::circle(q(2), q(0), q(1));
  auto t = centers_of_intersecting_circles(c1, c3, pt(1, 0), pt(1, 0));
  CHECK(t.first == pt(0, 0));
  CHECK(t.second == pt(2, 0));
  check_replay(t.trace);

  CHECK_THROWS_AS(centers_of_intersecting_circles(c1, c1, pt(1, 0), pt(-1, 0)), GeometryError);
  CHECK_THROWS_AS(centers_of_intersecting_circles(c1, c2, pt(1, 0), pt(0, 1)), GeometryError);
}

TEST_CASE("center of concentric circles") {
  auto r = center_of_concentric(Conic::unit_circle(), Conic::circle(q(0), q(0), q(4)));
  CHECK(r.point == pt(0, 0));
  check_replay(r.trace);
  auto s = center_of_concentric(Conic::circle(q(2), q(1), q(1)), Conic::circle(q(2), q(1), q(9)));
  CHECK(s.point == pt(2, 1));
  check_replay(s.trace);
  CHECK_THROWS_AS(center_of_concentric(Conic::unit_circle(), Conic::circle(q(3), q(0), q(1))), GeometryError);
}

TEST_CASE("small circles far from the origin") {
  auto r = center_of_concentric(Conic::circle(q(37, 2), q(-17), q(1, 16)), Conic::circle(q(37, 2), q(-17), q(1, 4)));
  CHECK(r.point == pt(q(37, 2), q(-17)));
  check_replay(r.trace);
  Conic w = Conic::circle(q(-40), q(31), q(1, 9)), a1 = Conic::circle(q(-35), q(31), q(1)),
        a2 = Conic::circle(q(-40), q(36), q(1, 4));
  auto t = three_circle_centers(w, a1, a2);
  REQUIRE(t.centers.size() == 3);
  CHECK(t.centers[0] == pt(-40, 31));
  CHECK(t.centers[2] == pt(-40, 36));
}

TEST_CASE("tangents from a point") {
  Conic unit = Conic::unit_circle();
  auto r = tangents_from_point(pt(0, 2), unit);
  REQUIRE(r.touch_points.size() == 2);
  Number h = Number(3).sqrt() / q(2);
  CHECK(r.touch_points[0] == pt(-h, q(1, 2)));
  CHECK(r.touch_points[1] == pt(h, q(1, 2)));
  for (const auto& l : r.tangents) CHECK(line_conic_intersect(l, unit).tangent);
  check_replay(r.trace);

  auto on = tangents_from_point(pt(1, 0), unit);
  REQUIRE(on.tangents.size() == 1);
  CHECK(on.tangents[0] == ProjLine(q(1), q(0), q(-1)));
  check_replay(on.trace);

  CHECK_THROWS_AS(tangents_from_point(pt(0, 0), unit), GeometryError);
}

TEST_CASE("second intersection by the hexagon theorem") {
  std::array<ProjPoint, 5> pts{pt(1, 0), pt(0, 1), pt(-1, 0), pt(0, -1), pt(q(3, 5), q(4, 5))};
  auto r = pascal_second_intersection(pts, ProjLine(q(1), q(-1), q(-1)));
  CHECK(r.point == pt(0, -1));
  check_replay(r.trace);
  CHECK(pascal_second_intersection(pts, ProjLine(q(1), q(0), q(-1))).point == pt(1, 0));
  CHECK(pascal_second_intersection(pts, ProjLine(q(0), q(1), q(0))).point == pt(-1, 0));
  // generic chord through (1,0) with slope 2: other point (3/5, -4/5)
  CHECK(pascal_second_intersection(pts, ProjLine(q(2), q(-1), q(-2))).point == pt(q(3, 5), q(-4, 5)));

  std::array<ProjPoint, 5> bad{pt(0, 0), pt(1, 1), pt(2, 2), pt(0, 1), pt(1, 0)};
  CHECK_THROWS_AS(pascal_second_intersection(bad, ProjLine(q(1), q(0), q(0))), GeometryError);
  CHECK_THROWS_AS(pascal_second_intersection(pts, ProjLine(q(0), q(1), q(-7))), GeometryError);

  std::mt19937 rng(3);
  for (int k = 0; k < 5; ++k) {
    ProjMap m = random_map(rng);
    std::array<ProjPoint, 5> img{m.apply(pts[0]), m.apply(pts[1]), m.apply(pts[2]), m.apply(pts[3]), m.apply(pts[4])};
    auto out = pascal_second_intersection(img, m.apply(ProjLine(q(1), q(-1), q(-1))));
    CHECK(out.point == m.apply(pt(0, -1)));
  }
}

TEST_CASE("gram centers") {
  Conic c1 = Conic::unit_circle(), c2 = Conic::circle(q(4), q(0), q(1));
  auto in = gram_centers(c1, c2, pt(q(1, 2), q(0)));
  REQUIRE(in.centers.size() == 2);
  CHECK(in.centers[0] == pt(0, 0));
  CHECK(in.centers[1] == pt(4, 0));
  CHECK_FALSE(in.reduced_from_exterior);

  auto out = gram_centers(c1, c2, pt(2, 0));
  REQUIRE(out.centers.size() == 2);
  CHECK(out.centers[0] == pt(0, 0));
  CHECK(out.centers[1] == pt(4, 0));
  CHECK(out.reduced_from_exterior);

  auto swapped = gram_centers(c2, c1, pt(2, 0));
  CHECK(swapped.centers[0] == out.centers[1]);
  CHECK(swapped.centers[1] == out.centers[0]);

  CHECK_THROWS_AS(gram_centers(c1, c2, pt(q(1, 2), q(1, 2))), GeometryError);
  CHECK_THROWS_AS(gram_centers(c1, Conic::circle(q(1), q(0), q(1)), pt(q(1, 2), q(0))), GeometryError);
  CHECK_THROWS_AS(gram_centers(c1, Conic::circle(q(0), q(0), q(4)), pt(q(1, 2), q(0))), GeometryError);

  // a limit point of the pencil: polars with respect to both circles coincide
  // (x^2 + y^2 = 1 and (x - 3)^2 + y^2 = 5/2 have limit points 1/2 and 2)
  Conic c3 = Conic::circle(q(3), q(0), q(5, 2));
  CHECK(polar(pt(q(1, 2), q(0)), c1) == polar(pt(q(1, 2), q(0)), c3));
  auto lim = gram_centers(c1, c3, pt(q(1, 2), q(0)));
  CHECK(lim.centers[0] == pt(0, 0));
  CHECK(lim.centers[1] == pt(3, 0));

  // nested, off-axis
  Conic big = Conic::circle(q(1), q(2), q(9)), small = Conic::circle(q(2), q(3), q(1));
  auto nested = gram_centers(big, small, pt(q(3, 2), q(5, 2)));
  CHECK(nested.centers[0] == pt(1, 2));
  CHECK(nested.centers[1] == pt(2, 3));
}

TEST_CASE("poncelet quadrilaterals") {
  Conic outer = Conic::unit_circle();
  Conic inner = Conic::circle(q(0), q(0), q(1, 2));
  auto sq = poncelet_quad(outer, inner, pt(1, 0));
  CHECK(sq.closed);
  REQUIRE(sq.diagonal_point);
  CHECK(*sq.diagonal_point == pt(0, 0));
  CHECK(sq.diagonal_on_central_line);
  Number h = Number(2).sqrt() / q(2);
  auto rot = poncelet_quad(outer, inner, pt(h, h));
  CHECK(rot.closed);
  CHECK(*rot.diagonal_point == pt(0, 0));

  CHECK_FALSE(poncelet_quad(outer, Conic::circle(q(0), q(0), q(1, 4)), pt(1, 0)).closed);
  CHECK_FALSE(poncelet_quad(outer, Conic::circle(q(0), q(0), q(1, 16)), pt(1, 0)).closed);

  // bicentric pair: R = 1, d = 1/2, r^2 = 9/40
  Conic shifted = Conic::circle(q(1, 2), q(0), q(9, 40));
  std::optional<ProjPoint> fixed;
  for (long t : {1, 2, 3}) {
    ProjPoint s = pt(q(1 - t * t, 1 + t * t), q(2 * t, 1 + t * t));
    auto rep = poncelet_quad(outer, shifted, s);
    CHECK(rep.closed);
    REQUIRE(rep.diagonal_point);
    CHECK(rep.diagonal_on_central_line);
    if (fixed) CHECK(*rep.diagonal_point == *fixed);
    fixed = rep.diagonal_point;
  }
  CHECK_THROWS_AS(poncelet_quad(outer, Conic::circle(q(1), q(0), q(1)), pt(-1, 0)), GeometryError);
  CHECK_THROWS_AS(poncelet_quad(outer, inner, pt(2, 0)), GeometryError);
}

TEST_CASE("three circle centers") {
  Conic w = Conic::unit_circle(), a1 = Conic::circle(q(3), q(0), q(1)), a2 = Conic::circle(q(0), q(3), q(1));
  auto r = three_circle_centers(w, a1, a2);
  REQUIRE(r.centers.size() == 3);
  CHECK(r.centers[0] == pt(0, 0));
  CHECK(r.centers[1] == pt(3, 0));
  CHECK(r.centers[2] == pt(0, 3));
  CHECK(r.gcd_degree == 2);
  CHECK(r.infinity_image == ProjLine::at_infinity());

  std::mt19937 rng(8);
  for (int k = 0; k < 2; ++k) {
    ProjMap m = random_map(rng);
    auto mapped = three_circle_centers(m.apply(w), m.apply(a1), m.apply(a2));
    REQUIRE(mapped.centers.size() == 3);
    CHECK(mapped.centers[0] == m.apply(pt(0, 0)));
    CHECK(mapped.centers[1] == m.apply(pt(3, 0)));
    CHECK(mapped.centers[2] == m.apply(pt(0, 3)));
  }

  Conic combo = Conic::from_coefficients({q(2), q(0), q(2), q(-6), q(0), q(7)});  // w + a1
  CHECK_THROWS_AS(three_circle_centers(w, a1, combo), GeometryError);
}

TEST_CASE("trace text and svg") {
  auto r = centers_of_intersecting_circles(Conic::unit_circle(), Conic::circle(q(2), q(0), q(1)), pt(1, 0), pt(1, 0));
  std::string text = r.trace.to_text();
  CHECK(text.find("claim center1") != std::string::npos);
  Trace back = Trace::parse(text);
  CHECK(back.to_text() == text);

  std::string svg = render_svg(r.trace);
  std::size_t count = 0;
  for (std::size_t pos = svg.find("class=\"move\""); pos != std::string::npos; pos = svg.find("class=\"move\"", pos + 1)) {
    ++count;
  }
  CHECK(count == r.trace.moves.size());

  // a claim whose recorded value is wrong is rejected
  std::string bad = text;
  auto at = bad.find("claim center1");
  auto eol = bad.find('\n', at);
  bad.replace(at, eol - at, "claim center1 = " + r.trace.claims[0].id + " @ (5, 5)");
  CHECK_THROWS_AS(Trace::parse(bad), SceneError);

  // tampering with a recorded binding breaks replay
  Trace tampered = r.trace;
  tampered.bindings.at(tampered.claims[0].id) = pt(7, 7);
  CHECK_FALSE(tampered.replay().ok);
}
