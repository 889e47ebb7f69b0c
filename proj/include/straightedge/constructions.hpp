#pragma once

#include <array>
#include <string>
#include <vector>

#include "straightedge/trace.hpp"

namespace straightedge {

/// Deterministic stream of rational points standing in for the adversary.
class AdversaryStream {
 public:
  explicit AdversaryStream(unsigned seed = 1) : state_(seed) {}
  ProjPoint next();
  /// A point of the square with the given centre and half width, as when the
  /// adversary is asked for a point in a region of the drawing.
  ProjPoint near(double x, double y, double half_width);

 private:
  unsigned long long state_;
};

struct LineConstruction {
  ProjLine line;
  Trace trace;
};

struct PointConstruction {
  ProjPoint point;
  Trace trace;
};

struct PairConstruction {
  ProjPoint first;
  ProjPoint second;
  Trace trace;
};

struct TangentConstruction {
  std::vector<ProjLine> tangents;
  std::vector<ProjPoint> touch_points;
  Trace trace;
};

/// Line through P parallel to AB, given the midpoint M of AB.
LineConstruction parallel_from_midpoint(const ProjPoint& a, const ProjPoint& b, const ProjPoint& m,
                                        const ProjPoint& p, std::size_t max_degree = kDefaultMaxDegree);

/// Midpoint of AB given a line l parallel to AB.
PointConstruction midpoint_from_parallel(const ProjPoint& a, const ProjPoint& b, const ProjLine& l,
                                         std::size_t max_degree = kDefaultMaxDegree);

/// Centers of two circles meeting at p and q (p == q for tangent circles).
PairConstruction centers_of_intersecting_circles(const Conic& c1, const Conic& c2, const ProjPoint& p,
                                                 const ProjPoint& q, std::size_t max_degree = kDefaultMaxDegree);

/// Common center of two concentric circles with distinct radii.
PointConstruction center_of_concentric(const Conic& c1, const Conic& c2, std::size_t max_degree = kDefaultMaxDegree);

/// Tangents from p to a circle; p must lie on or outside it.
TangentConstruction tangents_from_point(const ProjPoint& p, const Conic& c, std::size_t max_degree = kDefaultMaxDegree);

/// Second intersection of l (through pts[0]) with the conic through the five points.
PointConstruction pascal_second_intersection(const std::array<ProjPoint, 5>& pts, const ProjLine& l,
                                             std::size_t max_degree = kDefaultMaxDegree);

/// Outputs of the algebraic constructions that are certified by tower
/// confinement rather than by a straightedge trace.
struct AlgebraicCenters {
  std::vector<ProjPoint> centers;
  ProjLine infinity_image = ProjLine::at_infinity();  // the recovered line at infinity in input coordinates
  std::size_t max_degree_seen = 1;
  std::size_t gcd_degree = 0;      // three_circle_centers only
  bool reduced_from_exterior = false;  // gram_centers only
  ProjPoint interior_point{Number(0), Number(0), Number(1)};
  std::vector<std::string> log;
};

AlgebraicCenters gram_centers(const Conic& c1, const Conic& c2, const ProjPoint& a,
                              std::size_t max_degree = kDefaultMaxDegree);

AlgebraicCenters three_circle_centers(const Conic& w, const Conic& a1, const Conic& a2,
                                      std::size_t max_degree = kDefaultMaxDegree);

struct PonceletReport {
  std::vector<ProjPoint> vertices;  // start plus four images
  bool closed = false;
  std::optional<ProjPoint> diagonal_point;
  bool diagonal_on_central_line = false;
};

/// Four steps of the tangent/chord iteration from `start` on c1 around c2.
PonceletReport poncelet_quad(const Conic& c1, const Conic& c2, const ProjPoint& start,
                             std::size_t max_degree = kDefaultMaxDegree);

/// Real point strictly inside a real circle (sign test against the interior).
bool inside_circle(const ProjPoint& p, const Conic& c);

}  // namespace straightedge
