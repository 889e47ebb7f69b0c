#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "straightedge/algebra.hpp"
#include "straightedge/closure.hpp"
#include "straightedge/scene.hpp"
#include "straightedge/sigma.hpp"

namespace straightedge {

/// A rational polynomial whose roots avoid a field, with the argument recomputable.
///   Cubic:     no rational root, so irreducible of degree 3; no root in any quadratic tower.
///   Quartic:   no rational root and a resolvent cubic without rational roots, so irreducible
///              with Galois group A4 or S4; no root in any quadratic tower.
///   NoRational: no rational root; the roots are irrational only.
struct Obstruction {
  enum class Kind { Cubic, Quartic, NoRational };
  Kind kind;
  RationalPoly poly;

  bool excludes_towers() const { return kind != Kind::NoRational; }
  /// Recomputes the argument; false when it does not hold.
  bool revalidate() const;
  std::string transcript() const;
};

const char* obstruction_kind_name(Obstruction::Kind k);

/// Why one coordinate of a target's frame image avoids the Σ predicate:
/// the coordinate is a root of `annihilator`, and whenever annihilator(v) = 0
/// the value link(v) is a root of the obstruction (checked as exact divisibility).
struct Exclusion {
  std::string target;
  int coordinate = 0;  // 0 = x, 1 = y of the normalized image point
  RationalPoly annihilator;
  std::size_t obstruction = 0;
  RationalPoly link;
};

struct Certificate {
  std::string scenario;
  SigmaSpec sigma;
  /// Given objects; in image coordinates when the frame map cannot be written in a tower.
  Scene configuration;
  std::vector<Target> targets;
  std::vector<Obstruction> obstructions;
  std::vector<Exclusion> exclusions;
  /// Set for the scenario excluding perpendicular Σ-lines: index of the obstruction
  /// refuting a perpendicular slope pair.
  std::optional<std::size_t> perpendicular_obstruction;
  std::vector<std::string> notes;
};

struct ConditionResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SigmaReport {
  std::vector<ConditionResult> conditions;
  std::size_t samples = 0;
  bool passed() const;
  /// First failing condition's detail, empty when everything passed.
  std::string violation() const;
  std::string to_text() const;
};

/// Spot-checks that `spec` is a Σ-set for the configuration: its points and curves
/// are accepted, meets of lines through sampled members are members, lines through
/// two members meet the curves and lines of the configuration in members, and members
/// come within 1e-3 of random reals. Instance k draws from its own stream seeded by
/// (seed, k), so the verdict depends only on the arguments.
SigmaReport verify_sigma(const SigmaSpec& spec, const Scene& cfg, std::size_t samples, std::uint64_t seed);

/// Slope structure of Σ-lines for an affine frame whose inverse sends direction (1, q)
/// to (1, m + s q) with m rational and s^2 = d rational: perpendicular pairs need
/// d q^2 = m^2 + 1 and a horizontal Σ-line needs d q^2 = m^2.
struct SlopeArgument {
  Rational base_slope;  // m
  Rational scale_square;  // d
  RationalPoly perpendicular_poly;  // d t^2 - (m^2 + 1)
  RationalPoly horizontal_poly;     // d t^2 - m^2
  std::string transcript() const;
};

/// Derives the slope argument from a rational-predicate spec; nullopt when the
/// frame does not have the required shape.
std::optional<SlopeArgument> slope_argument(const SigmaSpec& spec);

struct SlopeScan {
  std::size_t pairs = 0;
  std::size_t products_minus_one = 0;
};

/// Slope products of lines through random Σ-points; vertical lines are redrawn.
SlopeScan scan_slope_products(const SigmaSpec& spec, std::size_t pairs, std::uint64_t seed);

/// Two perpendicular lines of the configuration, if any.
std::optional<std::pair<ProjLine, ProjLine>> find_perpendicular_pair(const Configuration& cfg);

struct CertificateCheck {
  std::vector<ConditionResult> conditions;
  bool passed() const;
  std::string to_text() const;
};

CertificateCheck check_certificate(const Certificate& cert, std::size_t samples = 500, std::uint64_t seed = 1);

/// Pieces of the common-tangent computation for the image pair
/// (x-1)^2 + (y+1)^2 = 1 and y = x^2.
struct TangentPipeline {
  Conic circle;
  Conic parabola;
  // tangent to the parabola at (t, t^2) meets the circle where a x^2 - b x + c = 0
  RationalPoly a, b, c;
  RationalPoly discriminant;  // b^2 - 4ac
  RationalPoly cubic;         // monic factor left after splitting off t = 0
  Rational cofactor;          // discriminant = cofactor * t * cubic
  std::vector<Interval> roots;  // isolated real roots of the cubic
};

TangentPipeline tangent_pipeline();

Certificate scenario_midpoint();
Certificate scenario_hilbert();
Certificate scenario_perpendicular();
Certificate scenario_theorem2();
/// theorem2 plus the conics lambda*circle + mu*parabola; throws std::invalid_argument
/// for a zero pair or a non-real coefficient.
Certificate scenario_pencil(const std::vector<std::pair<Number, Number>>& coeffs);
Certificate scenario_erased_intersections();

std::vector<std::string> scenario_names();
/// Throws std::invalid_argument for an unknown name.
Certificate scenario_by_name(const std::string& name);

/// JSON text; custom predicates cannot be written.
std::string certificate_to_json(const Certificate& cert);
/// Throws std::invalid_argument on malformed input.
Certificate certificate_from_json(const std::string& text);

struct DualityReport {
  ClosureReport closure;
  std::optional<std::string> perpendicular_pair;
  bool passed() const;
  std::string to_text() const;
};

/// Limits for closure runs under a certificate's adversary. Rational charts keep the
/// arithmetic cheap; tower-witnessed sets get a smaller per-phase work budget.
ClosureLimits duality_limits(const Certificate& cert);

/// The general algorithm under the certificate's sigma-dense adversary; passes when no
/// excluded target is reached, every stored point stays in Σ, and (for the
/// perpendicular scenario) no two stored lines are perpendicular.
DualityReport run_duality(const Certificate& cert, std::uint64_t seed, int depth = 4,
                          std::optional<ClosureLimits> limits = std::nullopt);

}  // namespace straightedge
