#pragma once

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "straightedge/projective.hpp"

namespace straightedge {

/// A set of points given as the preimage, under an optional frame map, of the
/// points whose normalized image coordinates all satisfy a field predicate.
///
/// Points at infinity count as members when their normalized direction does,
/// so the set is closed under joins and meets of parallel lines.
class SigmaSpec {
 public:
  enum class Kind { Rational, TowerWitnessed, Subfield, Custom };

  static SigmaSpec rational(std::optional<ProjMap> frame = std::nullopt);
  /// Every real value the tower arithmetic can represent.
  static SigmaSpec tower_witnessed(std::optional<ProjMap> frame = std::nullopt);
  /// Q(sqrt(r1), ..., sqrt(rk)) for positive rational radicands.
  static SigmaSpec subfield(std::vector<Rational> radicands, std::optional<ProjMap> frame = std::nullopt);
  static SigmaSpec custom(std::string name, std::function<bool(const Number&)> accepts,
                          std::optional<ProjMap> frame = std::nullopt);

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const std::optional<ProjMap>& frame() const { return frame_; }
  const std::vector<Rational>& radicands() const { return radicands_; }

  bool accepts_value(const Number& v) const;
  bool accepts(const ProjPoint& p) const;
  /// Membership of the point whose frame image is `img`.
  bool accepts_image(const ProjPoint& img) const;
  /// A line is a Σ-line when its image has predicate coefficients after scaling.
  bool accepts(const ProjLine& l) const;
  bool accepts(const Conic& c) const;

  ProjPoint to_image(const ProjPoint& p) const { return frame_ ? frame_->apply(p) : p; }
  ProjPoint from_image(const ProjPoint& p) const { return frame_ ? frame_->inverse().apply(p) : p; }

  /// Random finite member: preimage of a small rational image point.
  ProjPoint sample(std::mt19937_64& rng) const;
  /// Member within `tol` of the real point (x, y); nullopt if the search fails.
  std::optional<ProjPoint> approximate(double x, double y, double tol) const;

  std::string describe() const;

 private:
  SigmaSpec(Kind kind, std::string name, std::optional<ProjMap> frame)
      : kind_(kind), name_(std::move(name)), frame_(std::move(frame)) {}

  Kind kind_;
  std::string name_;
  std::optional<ProjMap> frame_;
  std::vector<Rational> radicands_;
  TowerPtr subfield_;
  std::function<bool(const Number&)> custom_;
};

/// Scales a triple so its first nonzero entry is 1.
Vec3 scale_first(const Vec3& v);

}  // namespace straightedge
