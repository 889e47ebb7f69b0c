#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "straightedge/polynomial.hpp"
#include "straightedge/scene.hpp"
#include "straightedge/sigma.hpp"

namespace straightedge {

struct ClosureLimits {
  std::size_t max_points = 20000;      // new points kept per generation
  std::size_t max_lines = 20000;       // new lines kept per generation
  std::size_t work_budget = 50000;     // candidate moves evaluated per phase of a step
  std::size_t max_degree = kDefaultMaxDegree;
};

struct StepStats {
  int generation = 0;
  std::size_t points = 0;
  std::size_t lines = 0;
  std::size_t new_points = 0;
  std::size_t new_lines = 0;
  std::size_t evaluated = 0;
  std::size_t max_degree = 1;
  bool truncated = false;
  bool stopped = false;  // ended early at the observer's request
};

/// Called for every point a move produces, stored or not; returning false
/// ends the step early.
using PointObserver = std::function<bool(const ProjPoint& p, bool stored)>;

/// Points and lines deduplicated by exact projective equality, plus fixed curves.
/// Objects are stored in a canonical scaling and tagged with the generation
/// that first produced them.
class Configuration {
 public:
  struct PointEntry {
    ProjPoint point;
    int generation;
    std::size_t degree;
  };
  struct LineEntry {
    ProjLine line;
    int generation;
    std::size_t degree;
  };

  static Configuration from_scene(const Scene& s);

  /// Adds unless already present; returns the index of the stored object.
  std::pair<std::size_t, bool> add(const ProjPoint& p, int generation);
  std::pair<std::size_t, bool> add(const ProjLine& l, int generation);
  void add_curve(const Conic& c) {
    curves_.push_back(c);
    cut_upto_ = 0;
  }

  std::optional<std::size_t> find(const ProjPoint& p) const;
  std::optional<std::size_t> find(const ProjLine& l) const;
  bool contains(const ProjPoint& p) const { return find(p).has_value(); }
  bool contains(const ProjLine& l) const { return find(l).has_value(); }

  const std::vector<PointEntry>& points() const { return points_; }
  const std::vector<LineEntry>& lines() const { return lines_; }
  const std::vector<Conic>& curves() const { return curves_; }

  /// Scene text with generated names p0.., l0.., c0...
  Scene to_scene() const;

 private:
  std::vector<PointEntry> points_;
  std::vector<LineEntry> lines_;
  std::vector<Conic> curves_;
  std::unordered_multimap<std::size_t, std::size_t> point_index_;
  std::unordered_multimap<std::size_t, std::size_t> line_index_;

  std::optional<std::size_t> find_canonical_point(const Vec3& v) const;
  std::optional<std::size_t> find_canonical_line(const Vec3& v) const;
  std::size_t insert_canonical_point(const Vec3& v, int generation);
  std::size_t insert_canonical_line(const Vec3& v, int generation);

  // Prefixes of points/lines whose pairs (or curve cuts) are already fully processed.
  std::size_t joined_upto_ = 0;
  std::size_t met_upto_ = 0;
  std::size_t cut_upto_ = 0;

  friend StepStats closure_step(Configuration&, int, const ClosureLimits&, const PointObserver&);
};

/// A point to look for: either exact, or any finite point whose x-coordinate
/// is a root of a rational polynomial (used for points outside every tower).
struct Target {
  std::string name;
  std::optional<ProjPoint> point;
  RationalPoly x_root;

  static Target exact(std::string name, ProjPoint p) { return {std::move(name), std::move(p), {}}; }
  static Target algebraic(std::string name, RationalPoly x_root) { return {std::move(name), std::nullopt, std::move(x_root)}; }
  bool matches(const ProjPoint& p) const;
};

class Adversary {
 public:
  enum class Strategy { RationalDense, SigmaDense, Scripted };

  static Adversary rational_dense(std::uint64_t seed);
  static Adversary sigma_dense(SigmaSpec spec, std::uint64_t seed);
  static Adversary scripted(std::vector<ProjPoint> points);

  Strategy strategy() const { return strategy_; }
  const std::optional<SigmaSpec>& sigma() const { return sigma_; }
  ProjPoint next();
  std::string describe() const;

 private:
  Adversary(Strategy s, std::uint64_t seed) : strategy_(s), seed_(seed), rng_(seed) {}

  Strategy strategy_;
  std::uint64_t seed_;
  std::mt19937_64 rng_;
  std::optional<SigmaSpec> sigma_;
  std::vector<ProjPoint> script_;
  std::size_t cursor_ = 0;
};

/// One round of the general algorithm: all joins, then all meets (including
/// the new lines), then all real line-curve intersections. Candidates are
/// visited in a fixed order that favours low tower degree and early objects;
/// limits make the round stop early and report itself truncated.
StepStats closure_step(Configuration& cfg, int generation, const ClosureLimits& limits = {},
                       const PointObserver& observer = {});

/// Four adversary points with no three collinear and no two of their six
/// joins parallel; offending points are discarded and replaced.
std::vector<ProjPoint> general_position_quadruple(Adversary& adv, std::size_t* rejected = nullptr);

struct TargetVerdict {
  std::string name;
  std::optional<int> reached_at;
};

struct ClosureReport {
  std::vector<StepStats> generations;
  std::vector<TargetVerdict> targets;
  std::vector<ProjPoint> adversary_points;
  std::size_t adversary_rejections = 0;
  bool truncated = false;
  std::size_t sigma_checked = 0;
  std::optional<std::string> sigma_violation;

  bool reached(const std::string& name) const;
  std::string to_text() const;
};

struct ClosureOptions {
  int depth = 3;
  ClosureLimits limits;
  /// Check every stored point against the adversary's Σ-set (sigma-dense only).
  bool check_sigma = true;
  /// Stop once every target has been reached.
  bool stop_when_reached = true;
  /// Work in the coordinates given by this map. Moves commute with projective
  /// maps, so the closure is the preimage of the one computed there; a chart
  /// that makes the Σ-set rational keeps the arithmetic cheap. Exact targets only.
  std::optional<ProjMap> chart;
};

ClosureReport run_general_algorithm(Configuration cfg, Adversary adv, const std::vector<Target>& targets,
                                    const ClosureOptions& opts = {}, Configuration* final_cfg = nullptr);

}  // namespace straightedge
