#include "doctest.h"
#include "straightedge/closure.hpp"

using namespace straightedge;

namespace {

Number q(long n, long d = 1) { return Number::rational(n, d); }
ProjPoint pt(long x, long y) { return ProjPoint::affine(q(x), q(y)); }

// Intersection of lines p1p2 and p3p4 by Cramer's rule on affine coordinates.
ProjPoint crossing(long x1, long y1, long x2, long y2, long x3, long y3, long x4, long y4) {
  const Rational a1 = y2 - y1, b1 = x1 - x2, c1 = a1 * x1 + b1 * y1;
  const Rational a2 = y4 - y3, b2 = x3 - x4, c2 = a2 * x3 + b2 * y3;
  const Rational det = a1 * b2 - a2 * b1;
  REQUIRE(det != 0);
  return ProjPoint::affine(Number(Rational((c1 * b2 - c2 * b1) / det)), Number(Rational((a1 * c2 - a2 * c1) / det)));
}

ProjMap midpoint_frame() {
  const Number r2 = q(2).real_sqrt();
  return ProjMap(Mat3::from_rows({Vec3{q(1), q(0), q(0)}, Vec3{q(0), q(1), q(0)}, Vec3{q(1) - r2, q(0), r2}}));
}

}  // namespace

TEST_CASE("a step on two points adds their line only") {
  Configuration cfg;
  cfg.add(pt(0, 0), 0);
  cfg.add(pt(3, 1), 0);
  StepStats st = closure_step(cfg, 1);
  CHECK(st.new_lines == 1);
  CHECK(st.new_points == 0);
  CHECK(cfg.contains(ProjLine(q(1), q(-3), q(0))));
  CHECK_FALSE(st.truncated);
}

TEST_CASE("two steps on a quadrangle contain its diagonal points") {
  Configuration cfg;
  const long c[4][2] = {{0, 0}, {5, 1}, {1, 4}, {6, 8}};
  for (auto& p : c) cfg.add(pt(p[0], p[1]), 0);
  closure_step(cfg, 1);
  closure_step(cfg, 2);
  // pairings {01,23}, {02,13}, {03,12}
  CHECK(cfg.contains(crossing(0, 0, 5, 1, 1, 4, 6, 8)));
  CHECK(cfg.contains(crossing(0, 0, 1, 4, 5, 1, 6, 8)));
  CHECK(cfg.contains(crossing(0, 0, 6, 8, 5, 1, 1, 4)));
}

TEST_CASE("line-curve intersections join the configuration") {
  Configuration cfg;
  cfg.add(pt(-2, 0), 0);
  cfg.add(ProjPoint::affine(q(2), q(1, 2)), 0);
  cfg.add(ProjPoint::affine(q(-2), q(1, 2)), 0);
  cfg.add_curve(Conic::unit_circle());
  closure_step(cfg, 1);
  // y = 1/2 meets the circle at (+-sqrt(3)/2, 1/2)
  int found = 0;
  for (const auto& e : cfg.points()) {
    if (e.generation != 1 || !e.point.is_finite()) continue;
    if (e.point.y() == q(1, 2) && e.point.x() * e.point.x() == q(3, 4)) ++found;
  }
  CHECK(found == 2);
  for (const auto& e : cfg.points())
    if (e.generation == 1) CHECK(Conic::unit_circle().contains(e.point));
}

TEST_CASE("steps only grow the configuration") {
  Configuration cfg;
  for (auto p : {pt(0, 0), pt(2, 1), pt(1, 3)}) cfg.add(p, 0);
  cfg.add_curve(Conic::circle(q(1), q(1), q(2)));
  for (int g = 1; g <= 2; ++g) {
    const Configuration before = cfg;
    closure_step(cfg, g);
    for (const auto& e : before.points()) CHECK(cfg.contains(e.point));
    for (const auto& e : before.lines()) CHECK(cfg.contains(e.line));
    CHECK(cfg.points().size() >= before.points().size());
  }
}

TEST_CASE("degenerate adversary points are replaced") {
  Adversary adv = Adversary::scripted({pt(0, 0), pt(1, 0), pt(2, 0), pt(0, 1), pt(1, 1), pt(5, 7)});
  std::size_t rejected = 0;
  auto quad = general_position_quadruple(adv, &rejected);
  REQUIRE(quad.size() == 4);
  CHECK(rejected == 2);
  CHECK(quad[3] == pt(5, 7));
}

TEST_CASE("midpoint is reached from a parallel line") {
  Configuration cfg;
  cfg.add(pt(0, 0), 0);
  cfg.add(pt(1, 0), 0);
  cfg.add(ProjLine(q(0), q(1), q(-1)), 0);
  ClosureOptions opts;
  opts.depth = 3;
  auto rep = run_general_algorithm(cfg, Adversary::rational_dense(1),
                                   {Target::exact("M", ProjPoint::affine(q(1, 2), q(0)))}, opts);
  MESSAGE(rep.to_text());
  REQUIRE(rep.targets.size() == 1);
  REQUIRE(rep.targets[0].reached_at.has_value());
  CHECK(*rep.targets[0].reached_at <= 3);
}

TEST_CASE("midpoint stays out of reach under the skewed adversary") {
  const SigmaSpec sigma = SigmaSpec::rational(midpoint_frame());
  CHECK(sigma.accepts(pt(0, 0)));
  CHECK(sigma.accepts(pt(1, 0)));
  CHECK_FALSE(sigma.accepts(ProjPoint::affine(q(1, 2), q(0))));
  Configuration cfg;
  cfg.add(pt(0, 0), 0);
  cfg.add(pt(1, 0), 0);
  ClosureOptions opts;
  opts.depth = 4;
  opts.chart = midpoint_frame();
  auto rep = run_general_algorithm(cfg, Adversary::sigma_dense(sigma, 7),
                                   {Target::exact("M", ProjPoint::affine(q(1, 2), q(0)))}, opts);
  MESSAGE(rep.to_text());
  CHECK_FALSE(rep.reached("M"));
  CHECK_FALSE(rep.sigma_violation.has_value());
  CHECK(rep.sigma_checked > 100);
  for (const auto& p : rep.adversary_points) CHECK(sigma.accepts(p));
}

TEST_CASE("a chart run is the image of the plain run") {
  const SigmaSpec sigma = SigmaSpec::rational(midpoint_frame());
  Configuration cfg;
  cfg.add(pt(0, 0), 0);
  cfg.add(pt(1, 0), 0);
  cfg.add_curve(Conic::unit_circle());
  ClosureOptions plain;
  plain.depth = 2;
  ClosureOptions charted = plain;
  charted.chart = midpoint_frame();
  Configuration a, b;
  auto ra = run_general_algorithm(cfg, Adversary::sigma_dense(sigma, 11), {}, plain, &a);
  auto rb = run_general_algorithm(cfg, Adversary::sigma_dense(sigma, 11), {}, charted, &b);
  CHECK(ra.adversary_points == rb.adversary_points);
  REQUIRE(a.points().size() == b.points().size());
  REQUIRE(a.lines().size() == b.lines().size());
  for (const auto& e : b.points()) CHECK(a.contains(e.point));
  for (const auto& e : b.lines()) CHECK(a.contains(e.line));
  CHECK(ra.sigma_checked == rb.sigma_checked);
  CHECK(ra.sigma_violation == rb.sigma_violation);
}

TEST_CASE("reports are deterministic and empty targets give statistics only") {
  Configuration cfg;
  cfg.add(pt(0, 0), 0);
  cfg.add(pt(1, 0), 0);
  cfg.add_curve(Conic::unit_circle());
  ClosureOptions opts;
  opts.depth = 2;
  auto a = run_general_algorithm(cfg, Adversary::rational_dense(5), {}, opts);
  auto b = run_general_algorithm(cfg, Adversary::rational_dense(5), {}, opts);
  CHECK(a.to_text() == b.to_text());
  CHECK(a.to_text().find("target") == std::string::npos);
  CHECK(a.generations.size() == 3);
  auto c = run_general_algorithm(cfg, Adversary::rational_dense(6), {}, opts);
  CHECK(c.adversary_points != a.adversary_points);
}

TEST_CASE("depth zero keeps the initial objects") {
  Configuration cfg;
  cfg.add(pt(0, 0), 0);
  cfg.add(pt(1, 0), 0);
  ClosureOptions opts;
  opts.depth = 0;
  Configuration out;
  auto rep = run_general_algorithm(cfg, Adversary::rational_dense(1), {}, opts, &out);
  CHECK(out.points().size() == 2);
  CHECK(out.lines().empty());
  CHECK(rep.adversary_points.empty());
}

TEST_CASE("a live check flags points outside the set") {
  Configuration cfg;
  cfg.add(pt(0, 0), 0);
  cfg.add(ProjPoint::affine(q(1, 2), q(0)), 0);
  ClosureOptions opts;
  opts.depth = 1;
  auto rep = run_general_algorithm(cfg, Adversary::sigma_dense(SigmaSpec::rational(midpoint_frame()), 3), {}, opts);
  REQUIRE(rep.sigma_violation.has_value());
  CHECK(rep.sigma_violation->find("generation 0") != std::string::npos);
}

TEST_CASE("the degree cap names the offending move") {
  Configuration cfg;
  cfg.add(pt(-3, 0), 0);
  cfg.add(pt(3, 0), 0);
  // x^2 + y^2 = sqrt(2) meets y = 0 at x = +-2^(1/4)
  cfg.add_curve(Conic::circle(q(0), q(0), q(2).real_sqrt()));
  ClosureLimits lim;
  lim.max_degree = 2;
  try {
    closure_step(cfg, 1, lim);
    FAIL("expected a resource error");
  } catch (const ResourceError& e) {
    CHECK(std::string(e.what()).find("move on(l0, c0)") != std::string::npos);
  }
}

TEST_CASE("configuration dump parses back") {
  Configuration cfg;
  cfg.add(pt(0, 0), 0);
  cfg.add(pt(2, 1), 0);
  cfg.add_curve(Conic::unit_circle());
  closure_step(cfg, 1);
  Scene s = parse_scene(cfg.to_scene().to_text());
  Configuration back = Configuration::from_scene(s);
  CHECK(back.points().size() == cfg.points().size());
  CHECK(back.lines().size() == cfg.lines().size());
  for (const auto& e : cfg.points()) CHECK(back.contains(e.point));
}
