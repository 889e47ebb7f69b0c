#include "straightedge/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "straightedge/algebra.hpp"

namespace straightedge {

ProjPoint AdversaryStream::next() {
  auto draw = [this]() {
    // splitmix64
    state_ += 0x9E3779B97F4A7C15ULL;
    unsigned long long z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  };
  auto coord = [&]() {
    long num = static_cast<long>(draw() % 161) - 80;
    long den = static_cast<long>(draw() % 17) + 1;
    return Number::rational(num, den * 4);
  };
  Number x = coord();
  return ProjPoint::affine(x, coord());
}

ProjPoint AdversaryStream::near(double x, double y, double half_width) {
  // anchor on a 1/1024 grid; offsets of up to a dyadic half width
  const long scale = 1024;
  const int e = static_cast<int>(std::floor(std::log2(half_width)));
  const Number hw = e >= 0 ? Number(1L << std::min(e, 40)) : Number::rational(1, 1L << std::min(-e, 40));
  auto offset = [&] {
    const ProjPoint p = next();
    return p.x() / Number(20) * hw;
  };
  const Number ax = Number::rational(std::lround(x * scale), scale);
  const Number ay = Number::rational(std::lround(y * scale), scale);
  const Number dx = offset();
  return ProjPoint::affine(ax + dx, ay + offset());
}

bool inside_circle(const ProjPoint& p, const Conic& c) {
  if (!p.is_finite() || !p.is_real()) return false;
  ProjPoint unit = ProjPoint::affine(p.x(), p.y());
  return (c.evaluate(unit) / c.matrix()(0, 0)).sign() < 0;
}

namespace {

constexpr int kAttempts = 64;

ProjPoint affine_midpoint(const ProjPoint& a, const ProjPoint& b) {
  const Number half = Number::rational(1, 2);
  return ProjPoint::affine((a.x() + b.x()) * half, (a.y() + b.y()) * half);
}

void require_circle(const Conic& c, const char* what) {
  if (!c.is_real() || c.is_degenerate() || !is_circle(c)) {
    throw GeometryError(std::string(what) + " must be a real nondegenerate circle");
  }
}

Number radius2(const Conic& c) {
  auto k = c.coefficients();
  Number cx = k[3] / (Number(-2) * k[0]), cy = k[4] / (Number(-2) * k[0]);
  return cx * cx + cy * cy - k[5] / k[0];
}

// Floating-point centre of a central conic, for choosing where to ask for points.
std::optional<std::pair<double, double>> approx_center(const Conic& c) {
  if (!c.is_real()) return std::nullopt;
  auto k = c.coefficients();
  const double a = k[0].approx(), b = k[1].approx() / 2, cc = k[2].approx();
  const double d = k[3].approx() / 2, e = k[4].approx() / 2;
  const double det = a * cc - b * b;
  if (det == 0) return std::nullopt;
  return std::make_pair((-d * cc + e * b) / det, (-a * e + b * d) / det);
}

// Midpoint of segment ab given a line l parallel to it.
std::string midpoint_ids(TraceBuilder& tb, AdversaryStream& adv, const std::string& a, const std::string& b,
                         const std::string& l) {
  const ProjLine ab = join(tb.point(a), tb.point(b));
  for (int k = 0; k < kAttempts; ++k) {
    ProjPoint s = adv.next();
    if (ab.contains(s) || tb.line_of(l).contains(s)) continue;
    const auto mark = tb.checkpoint();
    try {
      std::string w = tb.adversary(s);
      std::string p = tb.meet(tb.line(w, a), l);
      std::string r = tb.meet(tb.line(w, b), l);
      std::string q = tb.meet(tb.line(a, r), tb.line(b, p));
      return tb.meet(tb.line(w, q), tb.line(a, b));
    } catch (const GeometryError&) {
      tb.rollback(mark);
    }
  }
  throw GeometryError("midpoint construction found no admissible auxiliary point");
}

// Line through p parallel to ab, given the midpoint m of ab.
std::string parallel_ids(TraceBuilder& tb, AdversaryStream& adv, const std::string& a, const std::string& b,
                         const std::string& m, const std::string& p) {
  const ProjLine ab = join(tb.point(a), tb.point(b));
  const ProjPoint far = ab.direction();
  for (int k = 0; k < kAttempts; ++k) {
    ProjPoint w0 = adv.next();
    if (ab.contains(w0) || join(tb.point(a), tb.point(p)).contains(w0)) continue;
    const auto mark = tb.checkpoint();
    try {
      std::string w = tb.adversary(w0);
      std::string wm = tb.line(w, m);
      std::string s = tb.meet(tb.line(a, p), wm);
      if (tb.point(s) == tb.point(a) || tb.point(s) == tb.point(p)) throw GeometryError("degenerate apex");
      std::string q = tb.meet(wm, tb.line(p, b));
      std::string r = tb.meet(tb.line(a, q), tb.line(s, b));
      std::string out = tb.line(p, r);
      if (!tb.line_of(out).contains(far)) throw GeometryError("degenerate quadrilateral");
      return out;
    } catch (const GeometryError&) {
      tb.rollback(mark);
    }
  }
  throw GeometryError("parallel construction found no admissible auxiliary point");
}

// Adversary point strictly inside the circle.
std::string inner_point(TraceBuilder& tb, AdversaryStream& adv, const std::string& curve) {
  const Conic& c = tb.curve(curve);
  for (int k = 0; k < 256; ++k) {
    ProjPoint w = adv.next();
    if (inside_circle(w, c)) return tb.adversary(w);
  }
  // small or distant circle: ask for points near its drawn centre
  if (auto o = approx_center(c)) {
    const double r = std::sqrt(std::max(0.0, radius2(c).approx()));
    for (int k = 0; k < 4096 && r > 0; ++k) {
      ProjPoint w = adv.near(o->first, o->second, r / 2);
      if (inside_circle(w, c)) return tb.adversary(w);
    }
  }
  throw GeometryError("adversary supplied no point inside " + curve);
}

struct TangentIds {
  std::vector<std::string> lines;
  std::vector<std::string> touch;
};

TangentIds tangent_ids(TraceBuilder& tb, AdversaryStream& adv, const std::string& p, const std::string& curve) {
  const Conic& c = tb.curve(curve);
  const ProjPoint& pp = tb.point(p);
  if (c.contains(pp)) {
    for (int k = 0; k < kAttempts; ++k) {
      const auto mark = tb.checkpoint();
      try {
        std::array<std::string, 4> x;
        for (auto& xi : x) {
          std::string w = inner_point(tb, adv, curve);
          xi = tb.other_on(tb.line(p, w), curve, p);
          if (tb.point(xi) == pp) throw GeometryError("tangent secant");
        }
        for (int i = 0; i < 4; ++i) {
          for (int j = i + 1; j < 4; ++j) {
            if (tb.point(x[i]) == tb.point(x[j])) throw GeometryError("repeated point");
          }
        }
        std::string u = tb.meet(tb.line(p, x[0]), tb.line(x[2], x[3]));
        std::string v = tb.meet(tb.line(x[0], x[1]), tb.line(x[3], p));
        std::string z = tb.meet(tb.line(u, v), tb.line(x[1], x[2]));
        if (tb.point(z) == pp) throw GeometryError("degenerate hexagon");
        return {{tb.line(p, z)}, {p}};
      } catch (const GeometryError&) {
        tb.rollback(mark);
      }
    }
    throw GeometryError("tangent construction failed");
  }
  if (inside_circle(pp, c)) throw GeometryError("point lies strictly inside the circle; no real tangents");
  for (int k = 0; k < kAttempts; ++k) {
    const auto mark = tb.checkpoint();
    try {
      std::string s1 = tb.line(p, inner_point(tb, adv, curve));
      std::string s2 = tb.line(p, inner_point(tb, adv, curve));
      if (tb.line_of(s1) == tb.line_of(s2)) throw GeometryError("coincident secants");
      std::string a1 = tb.on(s1, curve, Selector::First), b1 = tb.on(s1, curve, Selector::Second);
      std::string a2 = tb.on(s2, curve, Selector::First), b2 = tb.on(s2, curve, Selector::Second);
      std::string x = tb.meet(tb.line(a1, a2), tb.line(b1, b2));
      std::string y = tb.meet(tb.line(a1, b2), tb.line(b1, a2));
      std::string polar_line = tb.line(x, y);
      std::string t1 = tb.on(polar_line, curve, Selector::First);
      std::string t2 = tb.on(polar_line, curve, Selector::Second);
      return {{tb.line(p, t1), tb.line(p, t2)}, {t1, t2}};
    } catch (const GeometryError&) {
      tb.rollback(mark);
    }
  }
  throw GeometryError("tangent construction failed");
}

}  // namespace

LineConstruction parallel_from_midpoint(const ProjPoint& a, const ProjPoint& b, const ProjPoint& m,
                                        const ProjPoint& p, std::size_t max_degree) {
  if (a == b) throw GeometryError("segment endpoints coincide");
  if (!(m == affine_midpoint(a, b))) throw GeometryError("M is not the midpoint of AB");
  if (join(a, b).contains(p)) throw GeometryError("P lies on line AB");
  TraceBuilder tb(max_degree);
  AdversaryStream adv(11);
  tb.add_point("A", a);
  tb.add_point("B", b);
  tb.add_point("M", m);
  tb.add_point("P", p);
  std::string l = parallel_ids(tb, adv, "A", "B", "M", "P");
  tb.claim("parallel", l);
  ProjLine out = tb.line_of(l);
  return {out, tb.take()};
}

PointConstruction midpoint_from_parallel(const ProjPoint& a, const ProjPoint& b, const ProjLine& l,
                                         std::size_t max_degree) {
  if (a == b) throw GeometryError("segment endpoints coincide");
  const ProjLine ab = join(a, b);
  if (ab == l) throw GeometryError("the parallel line coincides with AB");
  if (!l.contains(ab.direction())) throw GeometryError("line is not parallel to AB");
  TraceBuilder tb(max_degree);
  AdversaryStream adv(7);
  tb.add_point("A", a);
  tb.add_point("B", b);
  tb.add_line("l", l);
  std::string m = midpoint_ids(tb, adv, "A", "B", "l");
  tb.claim("midpoint", m);
  ProjPoint out = tb.point(m);
  return {out, tb.take()};
}

PairConstruction centers_of_intersecting_circles(const Conic& c1, const Conic& c2, const ProjPoint& p,
                                                 const ProjPoint& q, std::size_t max_degree) {
  require_circle(c1, "first circle");
  require_circle(c2, "second circle");
  if (c1 == c2) throw GeometryError("the two circles coincide");
  for (const ProjPoint* x : {&p, &q}) {
    if (!c1.contains(*x) || !c2.contains(*x)) throw GeometryError("given point is not on both circles");
  }
  if (p == q && !(polar(p, c1) == polar(p, c2))) throw GeometryError("circles are not tangent at the given point");

  TraceBuilder tb(max_degree);
  AdversaryStream adv(23);
  tb.add_curve("C1", c1);
  tb.add_curve("C2", c2);
  tb.add_point("p", p);
  if (!(p == q)) tb.add_point("q", q);
  const std::string qid = p == q ? "p" : "q";

  // One direction: parallel chords from the two circles, then a diameter of each.
  struct Diameters {
    std::string d1, d2;
    ProjPoint direction;
  };
  auto diameters = [&]() -> Diameters {
    for (int k = 0; k < kAttempts; ++k) {
      const auto mark = tb.checkpoint();
      try {
        std::string lp = tb.line("p", tb.adversary(adv.next()));
        std::string lq = tb.line(qid, tb.adversary(adv.next()));
        if (tb.line_of(lp) == tb.line_of(lq)) throw GeometryError("coincident lines");
        std::string a = tb.other_on(lp, "C1", "p"), b = tb.other_on(lp, "C2", "p");
        std::string c = tb.other_on(lq, "C1", qid), d = tb.other_on(lq, "C2", qid);
        for (const auto& id : {a, b, c, d}) {
          if (tb.point(id) == p || tb.point(id) == q) throw GeometryError("tangent secant");
        }
        std::string chord1 = tb.line(a, c), chord2 = tb.line(b, d);
        if (tb.line_of(chord1) == tb.line_of(chord2)) throw GeometryError("coincident chords");
        std::string m1 = midpoint_ids(tb, adv, a, c, chord2);
        std::string m2 = midpoint_ids(tb, adv, b, d, chord1);
        // second pair of chords through p (or q) in the same direction
        for (const std::string& through : {std::string("p"), qid}) {
          std::string par = parallel_ids(tb, adv, a, c, m1, through);
          std::string e1 = tb.other_on(par, "C1", through), e2 = tb.other_on(par, "C2", through);
          if (tb.point(e1) == tb.point(through) || tb.point(e2) == tb.point(through)) continue;
          std::string n1 = midpoint_ids(tb, adv, through, e1, chord1);
          std::string n2 = midpoint_ids(tb, adv, through, e2, chord1);
          return {tb.line(m1, n1), tb.line(m2, n2), tb.line_of(chord1).direction()};
        }
        throw GeometryError("second chord is tangent");
      } catch (const GeometryError&) {
        tb.rollback(mark);
      }
    }
    throw GeometryError("no admissible secants through the common points");
  };

  Diameters first = diameters();
  for (int k = 0; k < kAttempts; ++k) {
    const auto mark = tb.checkpoint();
    Diameters second = diameters();
    if (second.direction == first.direction) {
      tb.rollback(mark);
      continue;
    }
    std::string o1 = tb.meet(first.d1, second.d1);
    std::string o2 = tb.meet(first.d2, second.d2);
    tb.claim("center1", o1);
    tb.claim("center2", o2);
    ProjPoint r1 = tb.point(o1), r2 = tb.point(o2);
    return {r1, r2, tb.take()};
  }
  throw GeometryError("could not find two chord directions");
}

PointConstruction center_of_concentric(const Conic& c1, const Conic& c2, std::size_t max_degree) {
  require_circle(c1, "first circle");
  require_circle(c2, "second circle");
  if (c1 == c2) throw GeometryError("the two circles coincide");
  if (!(center(c1) == center(c2))) throw GeometryError("circles are not concentric");
  const bool first_outer = (radius2(c1) - radius2(c2)).sign() > 0;

  TraceBuilder tb(max_degree);
  AdversaryStream adv(31);
  tb.add_curve("C1", c1);
  tb.add_curve("C2", c2);
  const std::string outer = first_outer ? "C1" : "C2";
  const std::string inner = first_outer ? "C2" : "C1";

  auto axis = [&]() -> std::string {
    for (int k = 0; k < kAttempts; ++k) {
      const auto mark = tb.checkpoint();
      try {
        std::string w1 = inner_point(tb, adv, inner);
        std::string w2 = tb.adversary(adv.next());
        std::string p = tb.on(tb.line(w1, w2), outer, Selector::First);
        TangentIds t = tangent_ids(tb, adv, p, inner);
        if (t.lines.size() != 2) throw GeometryError("expected two tangents");
        std::string q1 = tb.other_on(t.lines[0], outer, p);
        std::string q2 = tb.other_on(t.lines[1], outer, p);
        // t1, t2 bisect p q1 and p q2; the medians meet on the symmetry axis through p
        std::string g = tb.meet(tb.line(q1, t.touch[1]), tb.line(q2, t.touch[0]));
        return tb.line(p, g);
      } catch (const GeometryError&) {
        tb.rollback(mark);
      }
    }
    throw GeometryError("no admissible point on the outer circle");
  };

  std::string a1 = axis();
  for (int k = 0; k < kAttempts; ++k) {
    const auto mark = tb.checkpoint();
    std::string a2 = axis();
    if (tb.line_of(a1) == tb.line_of(a2)) {
      tb.rollback(mark);
      continue;
    }
    std::string o = tb.meet(a1, a2);
    tb.claim("center", o);
    ProjPoint out = tb.point(o);
    return {out, tb.take()};
  }
  throw GeometryError("could not find two distinct axes");
}

TangentConstruction tangents_from_point(const ProjPoint& p, const Conic& c, std::size_t max_degree) {
  require_circle(c, "curve");
  TraceBuilder tb(max_degree);
  AdversaryStream adv(41);
  tb.add_curve("C", c);
  tb.add_point("p", p);
  TangentIds ids = tangent_ids(tb, adv, "p", "C");
  TangentConstruction out;
  for (std::size_t k = 0; k < ids.lines.size(); ++k) {
    tb.claim("tangent" + std::to_string(k + 1), ids.lines[k]);
    tb.claim("touch" + std::to_string(k + 1), ids.touch[k]);
    out.tangents.push_back(tb.line_of(ids.lines[k]));
    out.touch_points.push_back(tb.point(ids.touch[k]));
  }
  out.trace = tb.take();
  return out;
}

PointConstruction pascal_second_intersection(const std::array<ProjPoint, 5>& pts, const ProjLine& l,
                                             std::size_t max_degree) {
  for (int i = 0; i < 5; ++i) {
    for (int j = i + 1; j < 5; ++j) {
      if (pts[i] == pts[j]) throw GeometryError("points are not distinct");
      for (int k = j + 1; k < 5; ++k) {
        if (collinear(pts[i], pts[j], pts[k])) {
          throw GeometryError("points are not on a common nondegenerate conic (three are collinear)");
        }
      }
    }
  }
  if (!l.contains(pts[0])) throw GeometryError("line does not pass through the first point");

  TraceBuilder tb(max_degree);
  std::array<std::string, 5> name;
  for (int k = 0; k < 5; ++k) name[k] = tb.add_point("P" + std::to_string(k), pts[k]);
  tb.add_line("l", l);

  std::array<int, 4> order{1, 2, 3, 4};
  do {
    const auto mark = tb.checkpoint();
    const std::string &p1 = name[order[0]], &p2 = name[order[1]], &p3 = name[order[2]], &p4 = name[order[3]];
    try {
      std::string u = tb.meet(tb.line(name[0], p1), tb.line(p3, p4));
      std::string w = tb.meet(tb.line(p2, p3), "l");
      std::string v = tb.meet(tb.line(p1, p2), tb.line(u, w));
      std::string x = tb.meet(tb.line(p4, v), "l");
      tb.claim("second", x);
      ProjPoint out = tb.point(x);
      return {out, tb.take()};
    } catch (const GeometryError&) {
      tb.rollback(mark);
    }
  } while (std::next_permutation(order.begin(), order.end()));
  throw GeometryError("every hexagon ordering is degenerate");
}

// ---------------------------------------------------------------- algebraic

namespace {

std::size_t degree_of(const Vec3& v) {
  std::size_t d = 1;
  for (const auto& x : v) d = std::max(d, x.degree());
  return d;
}

Vec3 basis(int k) {
  Vec3 e{Number(0), Number(0), Number(0)};
  e[k] = Number(1);
  return e;
}

// Projective map taking c to a multiple of the unit circle and o to the origin.
// `o` must be interior: its polar carries the positive part of the form.
ProjMap unit_frame(const Conic& c, const ProjPoint& o, std::size_t max_degree) {
  const Mat3& m = c.matrix();
  const Vec3 e3 = o.coords();
  const Vec3 lo = m * e3;
  Vec3 e1;
  for (int k : {2, 0, 1}) {
    e1 = cross(lo, basis(k));
    if (!is_null(e1)) break;
  }
  const Vec3 e2 = cross(lo, m * e1);
  const Number q1 = dot(e1, m * e1), q2 = dot(e2, m * e2), q3 = dot(e3, m * e3);
  if (q3.is_zero() || q1.is_zero() || q2.is_zero()) throw GeometryError("frame point lies on the conic");
  const Number r1 = -q3 / q1, r2 = -q3 / q2;
  if (r1.sign() <= 0 || r2.sign() <= 0) throw GeometryError("frame point is not interior to the conic");
  const Number s1 = r1.sqrt(max_degree), s2 = r2.sqrt(max_degree);
  Mat3 b;
  for (int i = 0; i < 3; ++i) {
    b.m[i][0] = s1 * e1[i];
    b.m[i][1] = s2 * e2[i];
    b.m[i][2] = e3[i];
  }
  return ProjMap(b).inverse();
}

std::vector<Number> quadratic_roots(const Number& a, const Number& b, const Number& c, std::size_t max_degree) {
  if (a.is_zero()) {
    if (b.is_zero()) return {};
    return {-c / b};
  }
  Number root = (b * b - Number(4) * a * c).sqrt(max_degree);
  Number den = Number(2) * a;
  return {(-b + root) / den, (-b - root) / den};
}

std::size_t rank_of(std::vector<std::array<Number, 6>> rows) {
  std::size_t rank = 0;
  for (int col = 0; col < 6 && rank < rows.size(); ++col) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][col].is_zero()) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col].is_zero()) continue;
      Number f = rows[r][col] / rows[rank][col];
      for (int j = 0; j < 6; ++j) rows[r][j] = rows[r][j] - f * rows[rank][j];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

AlgebraicCenters gram_centers(const Conic& c1, const Conic& c2, const ProjPoint& a, std::size_t max_degree) {
  require_circle(c1, "first circle");
  require_circle(c2, "second circle");
  const ProjPoint o1 = center(c1), o2 = center(c2);
  if (o1 == o2) throw GeometryError("circles are concentric");
  {
    auto k1 = c1.coefficients(), k2 = c2.coefficients();
    ProjLine radical(k1[3] / k1[0] - k2[3] / k2[0], k1[4] / k1[0] - k2[4] / k2[0], k1[5] / k1[0] - k2[5] / k2[0]);
    if (!line_conic_intersect(radical, c1, IntersectMode::RealOnly, max_degree).points.empty()) {
      throw GeometryError("circles intersect");
    }
  }
  if (!a.is_finite() || !a.is_real()) throw GeometryError("point must be a finite real point");
  if (!collinear(a, o1, o2)) throw GeometryError("point is not on the line of centers");
  if (c1.contains(a) || c2.contains(a)) throw GeometryError("point lies on one of the circles");

  AlgebraicCenters out;
  const Conic* frame_circle = &c1;
  const Conic* other = &c2;
  ProjPoint inner = a;
  if (inside_circle(a, c1)) {
    out.log.push_back("point is interior to the first circle");
  } else if (inside_circle(a, c2)) {
    std::swap(frame_circle, other);
    out.log.push_back("point is interior to the second circle");
  } else {
    // tangents to the circle of smaller angular radius cross the other circle;
    // the touch chord and the chord of nearer crossings are parallel
    const Number rho1 = radius2(c1) / distance2(a, o1), rho2 = radius2(c2) / distance2(a, o2);
    if ((rho2 - rho1).sign() < 0) std::swap(frame_circle, other);
    auto touch = line_conic_intersect(polar(a, *frame_circle), *frame_circle, IntersectMode::RealOnly, max_degree);
    if (touch.points.size() != 2) throw GeometryError("expected two tangents from the point");
    std::vector<ProjPoint> near;
    for (const auto& t : touch.points) {
      auto hit = line_conic_intersect(join(a, t), *other, IntersectMode::RealOnly, max_degree);
      if (hit.points.empty()) throw GeometryError("tangent misses the other circle");
      const ProjPoint* best = &hit.points[0];
      for (const auto& h : hit.points) {
        if ((distance2(a, h) - distance2(a, *best)).sign() < 0) best = &h;
      }
      near.push_back(*best);
    }
    inner = midpoint_from_parallel(touch.points[0], touch.points[1], join(near[0], near[1]), max_degree).point;
    out.reduced_from_exterior = true;
    out.log.push_back("exterior point reduced to the chord midpoint " + inner.to_string());
  }
  out.interior_point = inner;

  const ProjMap frame = unit_frame(*frame_circle, inner, max_degree);
  const Conic image = frame.apply(*other);
  const Conic unit = Conic::unit_circle();
  const ProjPoint origin(Number(0), Number(0), Number(1));
  for (const ProjLine& axis : symmetry_axes(image, unit, max_degree)) {
    if (!axis.contains(origin)) continue;
    const ProjPoint dir = axis.direction();
    const Number u = dir.coords()[0], v = dir.coords()[1];
    const Number len = (u * u + v * v).sqrt(max_degree);
    Mat3 rot = Mat3::from_rows({Vec3{u, v, Number(0)}, Vec3{-v, u, Number(0)}, Vec3{Number(0), Number(0), len}});
    const ProjMap g = frame.then(ProjMap(rot));
    auto k = g.apply(*other).coefficients();
    if (!k[1].is_zero() || !k[4].is_zero()) continue;
    // y² = z² - x² on the unit circle leaves a binary quadratic in x : z
    std::vector<std::pair<Number, Number>> roots;
    const Number lead = k[0] - k[2];
    if (lead.is_zero()) {
      roots.emplace_back(Number(1), Number(0));
      if (!k[3].is_zero()) roots.emplace_back(-(k[2] + k[5]), k[3]);
    } else {
      for (const auto& x : quadratic_roots(lead, k[3], k[2] + k[5], max_degree)) roots.emplace_back(x, Number(1));
    }
    std::vector<ProjPoint> common;
    for (const auto& [x, z] : roots) {
      Number y = (z * z - x * x).sqrt(max_degree);
      common.emplace_back(x, y, z);
      common.emplace_back(x, -y, z);
    }
    const ProjMap back = g.inverse();
    for (std::size_t i = 0; i < common.size(); ++i) {
      for (std::size_t j = i + 1; j < common.size(); ++j) {
        if (common[i] == common[j]) continue;
        ProjLine candidate = join(common[i], common[j]);
        ProjLine original = back.apply(candidate);
        if (!(original == ProjLine::at_infinity())) continue;
        out.infinity_image = original;
        out.centers = {pole(original, c1), pole(original, c2)};
        for (const auto& p : common) out.max_degree_seen = std::max(out.max_degree_seen, degree_of(p.coords()));
        for (const auto& row : g.matrix().m) {
          for (const auto& e : row) out.max_degree_seen = std::max(out.max_degree_seen, e.degree());
        }
        out.log.push_back("common points of the frame circle and the image: 4; line at infinity recovered");
        return out;
      }
    }
  }
  throw GeometryError("no symmetry axis through the frame center yields the line at infinity");
}

AlgebraicCenters three_circle_centers(const Conic& w, const Conic& a1, const Conic& a2, std::size_t max_degree) {
  for (const Conic* c : {&w, &a1, &a2}) {
    if (c->is_degenerate() || !c->is_real()) throw GeometryError("inputs must be real nondegenerate conics");
  }
  if (rank_of({w.coefficients(), a1.coefficients(), a2.coefficients()}) < 3) {
    throw GeometryError("same pencil: the three conics are linearly dependent");
  }
  // interior points of w have negative value once det is made negative
  Mat3 mw = w.matrix();
  const Number sign = mw.det().sign() < 0 ? Number(1) : Number(-1);

  AlgebraicCenters out;
  AdversaryStream adv(53);
  std::vector<ProjPoint> frame_points;
  for (int i = -6; i <= 6 && frame_points.size() < 8; ++i) {
    for (int j = -6; j <= 6 && frame_points.size() < 8; ++j) {
      ProjPoint o = ProjPoint::affine(Number::rational(i, 2), Number::rational(j, 2));
      if ((sign * w.evaluate(o)).sign() < 0) frame_points.push_back(o);
    }
  }
  for (int k = 0; k < 20000 && frame_points.size() < 16; ++k) {
    ProjPoint o = adv.next();
    if ((sign * w.evaluate(o)).sign() < 0) frame_points.push_back(o);
  }
  // the centre of an ellipse is interior: shrink a square around its drawn position
  if (auto o = approx_center(w)) {
    for (int e = 6; e >= -20 && frame_points.size() < 16; --e) {
      for (int k = 0; k < 64 && frame_points.size() < 16; ++k) {
        ProjPoint p = adv.near(o->first, o->second, std::ldexp(1.0, e));
        if ((sign * w.evaluate(p)).sign() < 0) frame_points.push_back(p);
      }
    }
  }
  if (frame_points.empty()) throw GeometryError("could not find an interior point of the first conic");

  for (const ProjPoint& o : frame_points) {
    std::optional<ProjMap> made;
    try {
      made = unit_frame(w, o, max_degree);
    } catch (const GeometryError&) {
      continue;
    }
    const ProjMap& frame = *made;
    std::array<Conic, 2> img{frame.apply(a1), frame.apply(a2)};
    std::array<NumberPoly, 2> quartic;
    std::array<NumberPoly, 2> quad, lin;
    for (int k = 0; k < 2; ++k) {
      auto c = img[k].coefficients();
      quad[k] = NumberPoly({c[2] + c[5], c[3], c[0] - c[2]});
      lin[k] = NumberPoly({c[4], c[1]});
      NumberPoly one_minus_x2({Number(1), Number(0), Number(-1)});
      quartic[k] = quad[k] * quad[k] - one_minus_x2 * lin[k] * lin[k];
    }
    if (quartic[0].is_zero() || quartic[1].is_zero()) continue;
    NumberPoly g = poly_gcd(quartic[0], quartic[1]);
    out.log.push_back("frame at " + o.to_string() + ": gcd degree " + std::to_string(g.degree()));
    if (g.degree() != 2) continue;
    auto xs = quadratic_roots(g.coeff(2), g.coeff(1), g.coeff(0), max_degree);
    std::vector<ProjPoint> common;
    const Conic unit = Conic::unit_circle();
    for (const auto& x : xs) {
      std::vector<Number> ys;
      for (int k = 0; k < 2 && ys.empty(); ++k) {
        Number l = lin[k].eval(x);
        if (!l.is_zero()) ys.push_back(-quad[k].eval(x) / l);
      }
      if (ys.empty()) {
        Number y = (Number(1) - x * x).sqrt(max_degree);
        ys = {y, -y};
      }
      for (const auto& y : ys) {
        ProjPoint p(x, y, Number(1));
        if (!unit.contains(p) || !img[0].contains(p) || !img[1].contains(p)) continue;
        if (std::none_of(common.begin(), common.end(), [&](const ProjPoint& q) { return q == p; })) {
          common.push_back(p);
        }
      }
    }
    if (common.size() != 2) continue;
    const ProjLine original = frame.inverse().apply(join(common[0], common[1]));
    out.gcd_degree = static_cast<std::size_t>(g.degree());
    out.infinity_image = original;
    out.centers = {pole(original, w), pole(original, a1), pole(original, a2)};
    for (const auto& p : common) out.max_degree_seen = std::max(out.max_degree_seen, degree_of(p.coords()));
    return out;
  }
  throw GeometryError("no frame exposed exactly two common points; inputs are not images of circles");
}

PonceletReport poncelet_quad(const Conic& c1, const Conic& c2, const ProjPoint& start, std::size_t max_degree) {
  require_circle(c1, "outer circle");
  require_circle(c2, "inner circle");
  if (!c1.contains(start)) throw GeometryError("start point is not on the outer circle");
  const ProjPoint o1 = center(c1), o2 = center(c2);
  {
    const Number r1 = radius2(c1), r2 = radius2(c2), d = distance2(o1, o2);
    // d + r2 < r1  <=>  r2 < r1 and 4 r1 r2 < (r1 + r2 - d)² with r1 + r2 - d > 0
    const Number s = r1 + r2 - d;
    bool nested = (r1 - r2).sign() > 0 && s.sign() > 0 && (s * s - Number(4) * r1 * r2).sign() > 0;
    if (!nested) throw GeometryError("inner circle is not nested inside the outer circle");
  }
  PonceletReport rep;
  rep.vertices.push_back(start);
  ProjPoint v = start;
  for (int step = 0; step < 4; ++step) {
    auto touch = line_conic_intersect(polar(v, c2), c2, IntersectMode::RealOnly, max_degree);
    if (touch.points.size() != 2) throw GeometryError("iteration left the real tower: no tangent from vertex");
    const ProjPoint* forward = nullptr;
    for (const auto& t : touch.points) {
      // inner center on the left of v -> t
      Number orient = (t.x() - v.x()) * (o2.y() - v.y()) - (t.y() - v.y()) * (o2.x() - v.x());
      if (orient.sign() > 0) forward = &t;
    }
    if (!forward) throw GeometryError("no forward tangent");
    auto chord = line_conic_intersect(join(v, *forward), c1, IntersectMode::RealOnly, max_degree);
    if (chord.points.size() != 2) throw GeometryError("tangent does not cross the outer circle");
    v = ProjPoint((chord.points[0] == v ? chord.points[1] : chord.points[0]).normalized());
    rep.vertices.push_back(v);
  }
  rep.closed = rep.vertices[4] == rep.vertices[0];
  if (rep.closed) {
    const auto& vs = rep.vertices;
    rep.diagonal_point = meet(join(vs[0], vs[2]), join(vs[1], vs[3]));
    rep.diagonal_on_central_line =
        o1 == o2 ? *rep.diagonal_point == o1 : collinear(*rep.diagonal_point, o1, o2);
  }
  return rep;
}

}  // namespace straightedge
