#include "straightedge/certificates.hpp"

#include <stdexcept>

namespace straightedge {

namespace {

const std::string kDensityNote =
    "density: Σ is the preimage of a dense set under a map that is a homeomorphism of the affine chart";

RationalPoly t_poly() { return RationalPoly({Rational(0), Rational(1)}); }

RationalPoly constant(const Rational& v) { return RationalPoly::constant(v); }

std::array<Rational, 6> rational_coefficients(const Conic& c) {
  std::array<Rational, 6> out;
  const auto k = c.coefficients();
  for (int i = 0; i < 6; ++i) out[i] = k[i].real().rational_value();
  return out;
}

Conic parabola() { return Conic::from_coefficients({Number(1), Number(0), Number(0), Number(0), Number(-1), Number(0)}); }

Conic alpha() { return Conic::circle(Number(1), Number(-1), Number(1)); }

// x-coordinate of the pole of the line [u : v : w] (entries in Q[s]/(modulus))
// with respect to a conic with rational coefficients.
RationalPoly pole_x(const Conic& c, const std::array<RationalPoly, 3>& line, const RationalPoly& modulus) {
  const Mat3 adj = c.matrix().adjugate();
  std::array<RationalPoly, 3> p;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) p[i] = p[i] + constant(adj(i, j).real().rational_value()) * line[j];
  const RationalPoly x = p[0].divmod(modulus).second;
  return mul_mod(x, inverse_mod(p[2], modulus), modulus);
}

Exclusion linked(const std::string& target, const RationalPoly& annihilator, std::size_t obstruction,
                 const RationalPoly& link) {
  return Exclusion{target, 0, annihilator, obstruction, link};
}

// Exclusion for a target whose x-coordinate is `element` in Q[t]/(modulus),
// where value(t) is a root of the obstruction: the annihilator is the
// characteristic polynomial of the element and the link recovers value from x.
Exclusion through_extension(const std::string& target, const RationalPoly& element, const RationalPoly& modulus,
                            const RationalPoly& value, std::size_t obstruction) {
  const RationalPoly f = characteristic_polynomial(element, modulus);
  auto g = express_in(element, t_poly(), modulus);
  if (!g) throw std::logic_error("x-coordinate of " + target + " does not generate its field");
  return linked(target, f, obstruction, compose(value, *g));
}

}  // namespace

TangentPipeline tangent_pipeline() {
  TangentPipeline tp{alpha(), parabola(), {}, {}, {}, {}, {}, {}, {}};
  const auto k = rational_coefficients(tp.circle);
  // tangent to y = x^2 at (t, t^2) is y = m x + q with m = 2t, q = -t^2
  const RationalPoly m({Rational(0), Rational(2)});
  const RationalPoly q({Rational(0), Rational(0), Rational(-1)});
  // substitute into k0 x^2 + k1 xy + k2 y^2 + k3 x + k4 y + k5
  tp.a = constant(k[0]) + constant(k[1]) * m + constant(k[2]) * m * m;
  tp.b = -(constant(k[1]) * q + constant(2 * k[2]) * m * q + constant(k[3]) + constant(k[4]) * m);
  tp.c = constant(k[2]) * q * q + constant(k[4]) * q + constant(k[5]);
  tp.discriminant = tp.b * tp.b - constant(4) * tp.a * tp.c;
  // t = 0 is the tangent y = 0 shared by both curves
  auto [rest, rem] = tp.discriminant.divmod(t_poly());
  if (!rem.is_zero()) throw std::logic_error("the x-axis is not a common tangent");
  tp.cofactor = rest.leading();
  tp.cubic = rest.monic();
  tp.roots = isolate_real_roots(tp.cubic, Rational(1, 1000));
  return tp;
}

Certificate scenario_midpoint() {
  const Number r2 = Number(2).real_sqrt();
  // x -> x / (x + sqrt2 (1 - x)) on the axis, fixing 0 and 1
  const ProjMap frame(Mat3::from_rows({Vec3{Number(1), Number(0), Number(0)}, Vec3{Number(0), Number(1), Number(0)},
                                       Vec3{Number(1) - r2, Number(0), r2}}));
  Certificate c{"midpoint", SigmaSpec::rational(frame), {}, {}, {}, {}, std::nullopt, {}};
  c.configuration.add("A", ProjPoint::affine(Number(0), Number(0)));
  c.configuration.add("B", ProjPoint::affine(Number(1), Number(0)));
  c.targets.push_back(Target::exact("M", ProjPoint::affine(Number::rational(1, 2), Number(0))));
  c.obstructions.push_back({Obstruction::Kind::NoRational, RationalPoly({Rational(-2), Rational(0), Rational(1)})});
  // image of M is sqrt2 - 1, a root of t^2 + 2t - 1 = (t + 1)^2 - 2
  c.exclusions.push_back(linked("M", RationalPoly({Rational(-1), Rational(2), Rational(1)}), 0,
                                RationalPoly({Rational(1), Rational(1)})));
  c.notes = {"frame fixes A and B and sends M to sqrt(2) - 1", kDensityNote};
  return c;
}

Certificate scenario_hilbert() {
  const RationalPoly cubic({Rational(-1), Rational(1), Rational(0), Rational(1)});  // t^3 + t - 1
  Certificate c{"hilbert", SigmaSpec::tower_witnessed(), {}, {}, {}, {}, std::nullopt, {}};
  c.configuration.add("circle", Conic::unit_circle());
  c.targets.push_back(Target::algebraic("center", cubic));
  c.obstructions.push_back({Obstruction::Kind::Cubic, cubic});
  c.exclusions.push_back(linked("center", cubic, 0, t_poly()));
  c.notes = {
      "image coordinates: the frame is the circle-preserving map [[1, 0, r], [0, k, 0], [r, 0, 1]] with r the real "
      "root of t^3 + t - 1 and k^2 = 1 - r^2; it multiplies the circle's form by 1 - r^2 and sends the center to (r, 0)",
      "the frame's entries lie outside every quadratic tower, so it is kept symbolic and the circle is already its own image",
      kDensityNote};
  return c;
}

Certificate scenario_perpendicular() {
  const Number r3 = Number(3).real_sqrt();
  // inverse of (x, y) -> (x, x + sqrt3 y)
  const ProjMap frame(Mat3::from_rows({Vec3{Number(1), Number(0), Number(0)},
                                       Vec3{-(r3.inverse()), r3.inverse(), Number(0)},
                                       Vec3{Number(0), Number(0), Number(1)}}));
  Certificate c{"perpendicular", SigmaSpec::rational(frame), {}, {}, {}, {}, std::nullopt, {}};
  c.obstructions.push_back({Obstruction::Kind::NoRational, RationalPoly({Rational(-2), Rational(0), Rational(3)})});
  c.perpendicular_obstruction = 0;
  c.notes = {"Σ is the image of Q^2 under (x, y) -> (x, x + sqrt(3) y); Σ-line slopes lie in 1 + Q sqrt(3)",
             kDensityNote};
  return c;
}

Certificate scenario_theorem2() {
  const TangentPipeline tp = tangent_pipeline();
  Certificate c{"theorem2", SigmaSpec::tower_witnessed(), {}, {}, {}, {}, std::nullopt, {}};
  c.configuration.add("alpha", tp.circle);
  c.configuration.add("parabola", tp.parabola);
  c.obstructions.push_back({Obstruction::Kind::Cubic, tp.cubic});
  c.targets.push_back(Target::algebraic("parabola-touch", tp.cubic));
  c.exclusions.push_back(linked("parabola-touch", tp.cubic, 0, t_poly()));
  // the tangent at (t, t^2) touches the circle at x = b / 2a
  const RationalPoly x = mul_mod(tp.b, inverse_mod(constant(2) * tp.a, tp.cubic), tp.cubic);
  const Exclusion on_circle = through_extension("circle-touch", x, tp.cubic, t_poly(), 0);
  c.targets.push_back(Target::algebraic("circle-touch", on_circle.annihilator));
  c.exclusions.push_back(on_circle);
  c.notes = {
      "image coordinates: the frame sending the original circles to these curves needs coordinates outside every "
      "quadratic tower",
      "the common tangents other than y = 0 touch the parabola where " + tp.cubic.to_string() + " = 0",
      "centers: the tangent exclusion plus the classical reduction from centers to common tangents rules out the "
      "centers; recorded as an implication, not computed",
      kDensityNote};
  return c;
}

Certificate scenario_pencil(const std::vector<std::pair<Number, Number>>& coeffs) {
  Certificate c = scenario_theorem2();
  c.scenario = "pencil";
  const Conic a = c.configuration.conic("alpha"), p = c.configuration.conic("parabola");
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const auto& [lambda, mu] = coeffs[i];
    if (!lambda.is_real() || !mu.is_real()) throw std::invalid_argument("pencil coefficients must be real");
    if (lambda.is_zero() && mu.is_zero()) throw std::invalid_argument("pencil coefficients (0, 0) give no conic");
    const Conic member = lambda.is_zero() ? p : mu.is_zero() ? a : lambda * a + mu * p;
    bool known = false;
    for (const auto& d : c.configuration.decls)
      if (auto k = std::get_if<Conic>(&d.value)) known = known || *k == member;
    if (!known) c.configuration.add("pencil" + std::to_string(i), member);
  }
  c.notes.push_back("pencil members have tower coefficients, so lines through Σ-points meet them in Σ");
  return c;
}

Certificate scenario_erased_intersections() {
  Certificate c{"erased", SigmaSpec::tower_witnessed(), {}, {}, {}, {}, std::nullopt, {}};
  const Conic second = Conic::from_coefficients({Number(1), Number(0), Number(1), Number(1), Number(1), Number(-1)});
  c.configuration.add("first", parabola());
  c.configuration.add("second", second);
  // common points: x^4 + 2x^2 + x - 1 = 0, two real and a conjugate pair z, conj(z)
  const RationalPoly quartic({Rational(-1), Rational(1), Rational(2), Rational(0), Rational(1)});
  // u = s^2 for s = z + conj(z) is a root of this cubic
  const RationalPoly cubic({Rational(-1), Rational(8), Rational(4), Rational(1)});
  c.obstructions.push_back({Obstruction::Kind::Cubic, cubic});
  c.obstructions.push_back({Obstruction::Kind::Quartic, quartic});

  const RationalPoly s = t_poly();
  const RationalPoly modulus = compose(cubic, s * s);
  // x^2 - s x + p has roots z, conj(z); the cofactor is x^2 + s x + p'
  const RationalPoly p = mul_mod(s * s * s + constant(2) * s + constant(1), inverse_mod(constant(2) * s, modulus), modulus);
  const RationalPoly p2 = (constant(2) + s * s - p).divmod(modulus).second;
  if (!(mul_mod(s, p - p2, modulus) == constant(1)) || !(mul_mod(p, p2, modulus) == constant(-1)))
    throw std::logic_error("conjugate pair does not factor the quartic");
  // the frame sends the line through z, conj(z) to infinity, so the centers are its poles
  const std::array<RationalPoly, 3> line{s, constant(-1), -p};
  c.targets.push_back(Target::algebraic("crossing", quartic));
  c.exclusions.push_back(linked("crossing", quartic, 1, t_poly()));
  const RationalPoly square = s * s;
  for (const auto& [name, conic] : {std::pair<std::string, Conic>{"center-1", parabola()}, {"center-2", second}}) {
    const Exclusion ex = through_extension(name, pole_x(conic, line, modulus), modulus, square, 0);
    c.targets.push_back(Target::algebraic(name, ex.annihilator));
    c.exclusions.push_back(ex);
  }
  c.notes = {
      "image coordinates: two circles through two real points map to these conics, their common points other than "
      "the images of the given intersections being the images of the cyclic points",
      "the configuration holds no marked points, so the given-point condition is vacuous",
      "center images are poles of the line through the conjugate common points; their x-coordinates determine "
      "s = z + conj(z), whose square is a root of " + cubic.to_string("u"),
      kDensityNote};
  return c;
}

std::vector<std::string> scenario_names() {
  return {"midpoint", "hilbert", "perpendicular", "theorem2", "pencil", "erased"};
}

Certificate scenario_by_name(const std::string& name) {
  if (name == "midpoint") return scenario_midpoint();
  if (name == "hilbert") return scenario_hilbert();
  if (name == "perpendicular") return scenario_perpendicular();
  if (name == "theorem2") return scenario_theorem2();
  if (name == "pencil") return scenario_pencil({{Number(1), Number(1)}, {Number(2).real_sqrt(), Number(1)}});
  if (name == "erased") return scenario_erased_intersections();
  throw std::invalid_argument("unknown scenario: " + name);
}

}  // namespace straightedge
