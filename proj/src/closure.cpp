#include "straightedge/closure.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>
#include <tuple>

#include "straightedge/constructions.hpp"

namespace straightedge {

namespace {

std::size_t hash_rational(const Rational& q) {
  std::size_t h = mpz_get_ui(q.get_num_mpz_t());
  h = h * 1000003u ^ mpz_get_ui(q.get_den_mpz_t());
  return sgn(q) < 0 ? ~h : h;
}

std::size_t hash_vec(const Vec3& v) {
  std::size_t h = 0x9e3779b97f4a7c15ull;
  for (const Number& c : v) {
    h = (h ^ hash_rational(c.re().rational_part())) * 0x100000001b3ull;
    h = (h ^ hash_rational(c.im().rational_part())) * 0x100000001b3ull;
  }
  return h;
}

bool same_number(const Number& a, const Number& b) {
  if (a.is_rational() && b.is_rational()) return a.re().rational_value() == b.re().rational_value();
  return a == b;
}

bool same_vec(const Vec3& a, const Vec3& b) {
  return same_number(a[0], b[0]) && same_number(a[1], b[1]) && same_number(a[2], b[2]);
}

bool all_rational(const Vec3& v) { return v[0].is_rational() && v[1].is_rational() && v[2].is_rational(); }

enum class Scaling { LastNonzero, FirstNonzero };

// Cross product scaled to a canonical representative; plain mpq arithmetic
// when both inputs are rational.
Vec3 canonical_cross(const Vec3& a, const Vec3& b, Scaling scaling) {
  if (all_rational(a) && all_rational(b)) {
    const Rational& a0 = a[0].re().rational_value();
    const Rational& a1 = a[1].re().rational_value();
    const Rational& a2 = a[2].re().rational_value();
    const Rational& b0 = b[0].re().rational_value();
    const Rational& b1 = b[1].re().rational_value();
    const Rational& b2 = b[2].re().rational_value();
    Rational r[3] = {a1 * b2 - a2 * b1, a2 * b0 - a0 * b2, a0 * b1 - a1 * b0};
    int k = -1;
    if (scaling == Scaling::LastNonzero) {
      for (int i = 2; i >= 0 && k < 0; --i)
        if (sgn(r[i]) != 0) k = i;
    } else {
      for (int i = 0; i < 3 && k < 0; ++i)
        if (sgn(r[i]) != 0) k = i;
    }
    if (k < 0) throw GeometryError("cross product of proportional triples");
    const Rational s = r[k];
    for (Rational& x : r) x /= s;
    return Vec3{Number(r[0]), Number(r[1]), Number(r[2])};
  }
  const Vec3 c = cross(a, b);
  if (is_null(c)) throw GeometryError("cross product of proportional triples");
  return scaling == Scaling::LastNonzero ? ProjPoint(c).normalized() : scale_first(c);
}

std::size_t vec_degree(const Vec3& v) {
  std::size_t d = 1;
  for (const Number& c : v) d = std::max(d, c.degree());
  return d;
}

/// Pairs (a, b), a < b, of ranks 0..n-1 in increasing order of (a+1)(b+1).
class PairWalk {
 public:
  explicit PairWalk(std::size_t n) : n_(n) {
    if (n_ >= 2) push(0, 1);
    next_row_ = 1;
  }
  bool done() const { return heap_.empty(); }
  std::pair<std::size_t, std::size_t> next() {
    auto [key, a, b] = heap_.top();
    heap_.pop();
    if (b + 1 < n_) push(a, b + 1);
    if (b == a + 1 && next_row_ == a + 1 && next_row_ + 1 < n_) {
      push(next_row_, next_row_ + 1);
      ++next_row_;
    }
    return {a, b};
  }

 private:
  using Entry = std::tuple<unsigned long long, std::size_t, std::size_t>;
  void push(std::size_t a, std::size_t b) {
    heap_.emplace(static_cast<unsigned long long>(a + 1) * (b + 1), a, b);
  }
  std::size_t n_;
  std::size_t next_row_ = 0;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap_;
};

template <class Entries>
std::vector<std::size_t> rank_order(const Entries& e, std::size_t n) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return e[a].degree < e[b].degree; });
  return order;
}

bool same_matrix(const Mat3& a, const Mat3& b) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (!(a(i, j) == b(i, j))) return false;
  return true;
}

[[noreturn]] void resource_failure(int generation, const std::string& move, const ResourceError& e) {
  throw ResourceError("generation " + std::to_string(generation) + ", move " + move + ": " + e.what());
}

}  // namespace

Configuration Configuration::from_scene(const Scene& s) {
  Configuration cfg;
  for (const Declaration& d : s.decls) {
    if (const auto* p = std::get_if<ProjPoint>(&d.value)) cfg.add(*p, 0);
    else if (const auto* l = std::get_if<ProjLine>(&d.value)) cfg.add(*l, 0);
    else cfg.add_curve(std::get<Conic>(d.value));
  }
  return cfg;
}

std::optional<std::size_t> Configuration::find(const ProjPoint& p) const { return find_canonical_point(p.normalized()); }

std::optional<std::size_t> Configuration::find_canonical_point(const Vec3& v) const {
  auto [lo, hi] = point_index_.equal_range(hash_vec(v));
  for (auto it = lo; it != hi; ++it)
    if (same_vec(points_[it->second].point.coords(), v)) return it->second;
  return std::nullopt;
}

std::optional<std::size_t> Configuration::find(const ProjLine& l) const { return find_canonical_line(scale_first(l.coeffs())); }

std::optional<std::size_t> Configuration::find_canonical_line(const Vec3& v) const {
  auto [lo, hi] = line_index_.equal_range(hash_vec(v));
  for (auto it = lo; it != hi; ++it)
    if (same_vec(lines_[it->second].line.coeffs(), v)) return it->second;
  return std::nullopt;
}

std::pair<std::size_t, bool> Configuration::add(const ProjPoint& p, int generation) {
  const Vec3 v = p.normalized();
  if (auto i = find_canonical_point(v)) return {*i, false};
  return {insert_canonical_point(v, generation), true};
}

std::pair<std::size_t, bool> Configuration::add(const ProjLine& l, int generation) {
  const Vec3 v = scale_first(l.coeffs());
  if (auto i = find_canonical_line(v)) return {*i, false};
  return {insert_canonical_line(v, generation), true};
}

std::size_t Configuration::insert_canonical_point(const Vec3& v, int generation) {
  point_index_.emplace(hash_vec(v), points_.size());
  points_.push_back({ProjPoint(v), generation, vec_degree(v)});
  return points_.size() - 1;
}

std::size_t Configuration::insert_canonical_line(const Vec3& v, int generation) {
  line_index_.emplace(hash_vec(v), lines_.size());
  lines_.push_back({ProjLine(v), generation, vec_degree(v)});
  return lines_.size() - 1;
}

Scene Configuration::to_scene() const {
  Scene s;
  for (std::size_t i = 0; i < points_.size(); ++i) s.add("p" + std::to_string(i), points_[i].point);
  for (std::size_t i = 0; i < lines_.size(); ++i) s.add("l" + std::to_string(i), lines_[i].line);
  for (std::size_t i = 0; i < curves_.size(); ++i) s.add("c" + std::to_string(i), curves_[i]);
  return s;
}

bool Target::matches(const ProjPoint& p) const {
  if (point) return same_vec(point->normalized(), p.normalized());
  if (!p.is_finite()) return false;
  return x_root.eval(p.x()).is_zero();
}

Adversary Adversary::rational_dense(std::uint64_t seed) { return Adversary(Strategy::RationalDense, seed); }

Adversary Adversary::sigma_dense(SigmaSpec spec, std::uint64_t seed) {
  Adversary a(Strategy::SigmaDense, seed);
  a.sigma_ = std::move(spec);
  return a;
}

Adversary Adversary::scripted(std::vector<ProjPoint> points) {
  Adversary a(Strategy::Scripted, 0);
  a.script_ = std::move(points);
  return a;
}

ProjPoint Adversary::next() {
  switch (strategy_) {
    case Strategy::RationalDense: {
      // A fresh stream keyed by seed and position keeps the sequence reproducible.
      AdversaryStream s(static_cast<unsigned>(seed_ * 1000003u + cursor_++));
      return s.next();
    }
    case Strategy::SigmaDense:
      ++cursor_;
      return sigma_->sample(rng_);
    case Strategy::Scripted:
      if (cursor_ >= script_.size()) throw std::runtime_error("scripted adversary exhausted");
      return script_[cursor_++];
  }
  throw std::logic_error("unknown adversary strategy");
}

std::string Adversary::describe() const {
  switch (strategy_) {
    case Strategy::RationalDense:
      return "rational-dense(seed " + std::to_string(seed_) + ")";
    case Strategy::SigmaDense:
      return "sigma-dense(" + sigma_->describe() + ", seed " + std::to_string(seed_) + ")";
    case Strategy::Scripted:
      return "scripted(" + std::to_string(script_.size()) + " points)";
  }
  return "?";
}

std::vector<ProjPoint> general_position_quadruple(Adversary& adv, std::size_t* rejected) {
  std::vector<ProjPoint> pts;
  std::size_t bad = 0;
  auto fits = [&](const ProjPoint& p) {
    if (!p.is_finite()) return false;
    std::vector<ProjPoint> all = pts;
    all.push_back(p);
    for (std::size_t i = 0; i < all.size(); ++i)
      for (std::size_t j = i + 1; j < all.size(); ++j) {
        if (all[i] == all[j]) return false;
        for (std::size_t k = j + 1; k < all.size(); ++k)
          if (collinear(all[i], all[j], all[k])) return false;
      }
    std::vector<ProjLine> joins;
    for (std::size_t i = 0; i < all.size(); ++i)
      for (std::size_t j = i + 1; j < all.size(); ++j) joins.push_back(join(all[i], all[j]));
    for (std::size_t i = 0; i < joins.size(); ++i)
      for (std::size_t j = i + 1; j < joins.size(); ++j)
        if (cross(joins[i].coeffs(), joins[j].coeffs())[2].is_zero()) return false;
    return true;
  };
  while (pts.size() < 4) {
    ProjPoint p = adv.next();
    if (fits(p)) pts.push_back(std::move(p));
    else if (++bad > 10000) throw std::runtime_error("adversary failed to supply points in general position");
  }
  if (rejected) *rejected = bad;
  return pts;
}

StepStats closure_step(Configuration& cfg, int generation, const ClosureLimits& limits,
                       const PointObserver& observer) {
  StepStats st;
  st.generation = generation;
  const std::size_t points_before = cfg.points().size();
  const std::size_t lines_before = cfg.lines().size();

  bool stop = false;
  auto store_line = [&](const Vec3& v) {
    if (cfg.find_canonical_line(v)) return;
    if (st.new_lines >= limits.max_lines) {
      st.truncated = true;
      return;
    }
    cfg.insert_canonical_line(v, generation);
    ++st.new_lines;
  };
  auto store_point = [&](const Vec3& v) {
    bool stored = false;
    if (!cfg.find_canonical_point(v)) {
      if (st.new_points >= limits.max_points) {
        st.truncated = true;
      } else {
        cfg.insert_canonical_point(v, generation);
        ++st.new_points;
        stored = true;
      }
    }
    if (observer && !observer(ProjPoint(v), stored)) stop = true;
  };

  // joins
  {
    const std::size_t n = cfg.points().size();
    const std::size_t cut = cfg.joined_upto_;
    const auto order = rank_order(cfg.points(), n);
    PairWalk walk(n);
    std::size_t work = 0;
    bool complete = true;
    while (!walk.done() && !stop) {
      auto [ra, rb] = walk.next();
      const std::size_t a = order[ra], b = order[rb];
      if (a < cut && b < cut) continue;
      // lines beyond the cap are never observed, so there is nothing left to learn
      if (work++ >= limits.work_budget || st.new_lines >= limits.max_lines) {
        complete = false;
        break;
      }
      try {
        store_line(canonical_cross(cfg.points()[a].point.coords(), cfg.points()[b].point.coords(),
                                   Scaling::FirstNonzero));
      } catch (const ResourceError& e) {
        resource_failure(generation, "join(p" + std::to_string(a) + ", p" + std::to_string(b) + ")", e);
      }
    }
    st.evaluated += std::min(work, limits.work_budget);
    if (complete && !stop) cfg.joined_upto_ = n;
    else st.truncated = true;
  }

  // meets
  {
    const std::size_t n = cfg.lines().size();
    const std::size_t cut = cfg.met_upto_;
    const auto order = rank_order(cfg.lines(), n);
    PairWalk walk(n);
    std::size_t work = 0;
    bool complete = true;
    while (!walk.done() && !stop) {
      auto [ra, rb] = walk.next();
      const std::size_t a = order[ra], b = order[rb];
      if (a < cut && b < cut) continue;
      if (work++ >= limits.work_budget) {
        complete = false;
        break;
      }
      try {
        store_point(canonical_cross(cfg.lines()[a].line.coeffs(), cfg.lines()[b].line.coeffs(),
                                    Scaling::LastNonzero));
      } catch (const ResourceError& e) {
        resource_failure(generation, "meet(l" + std::to_string(a) + ", l" + std::to_string(b) + ")", e);
      }
    }
    st.evaluated += std::min(work, limits.work_budget);
    if (complete && !stop) cfg.met_upto_ = n;
    else st.truncated = true;
  }

  // line-curve intersections
  if (!cfg.curves().empty()) {
    const std::size_t n = cfg.lines().size();
    const std::size_t cut = cfg.cut_upto_;
    const auto order = rank_order(cfg.lines(), n);
    std::size_t work = 0;
    bool complete = true;
    for (std::size_t r = 0; r < n && complete && !stop; ++r) {
      const std::size_t a = order[r];
      if (a < cut) continue;
      for (std::size_t c = 0; c < cfg.curves().size(); ++c) {
        if (work++ >= limits.work_budget) {
          complete = false;
          break;
        }
        try {
          const Intersection hit =
              line_conic_intersect(cfg.lines()[a].line, cfg.curves()[c], IntersectMode::RealOnly, limits.max_degree);
          for (const ProjPoint& p : hit.points) store_point(p.normalized());
        } catch (const ResourceError& e) {
          resource_failure(generation, "on(l" + std::to_string(a) + ", c" + std::to_string(c) + ")", e);
        } catch (const GeometryError&) {
          // the line is a component of a degenerate curve: no isolated points
        }
      }
    }
    st.evaluated += std::min(work, limits.work_budget);
    if (complete && !stop) cfg.cut_upto_ = n;
    else st.truncated = true;
  }

  st.stopped = stop;
  st.points = cfg.points().size();
  st.lines = cfg.lines().size();
  for (std::size_t i = points_before; i < st.points; ++i) st.max_degree = std::max(st.max_degree, cfg.points()[i].degree);
  for (std::size_t i = lines_before; i < st.lines; ++i) st.max_degree = std::max(st.max_degree, cfg.lines()[i].degree);
  return st;
}

bool ClosureReport::reached(const std::string& name) const {
  for (const TargetVerdict& t : targets)
    if (t.name == name) return t.reached_at.has_value();
  return false;
}

std::string ClosureReport::to_text() const {
  std::ostringstream os;
  for (const StepStats& g : generations) {
    os << "generation " << g.generation << ": points " << g.points << " (+" << g.new_points << "), lines "
       << g.lines << " (+" << g.new_lines << "), evaluated " << g.evaluated << ", max degree " << g.max_degree
       << (g.truncated ? ", truncated" : "") << "\n";
  }
  if (!adversary_points.empty()) {
    os << "adversary points:";
    for (const ProjPoint& p : adversary_points) os << " " << p.to_string();
    os << " (" << adversary_rejections << " rejected)\n";
  }
  for (const TargetVerdict& t : targets) {
    if (t.reached_at) os << "target " << t.name << ": reached at generation " << *t.reached_at << "\n";
    else os << "target " << t.name << ": not reached by depth " << (generations.empty() ? 0 : generations.back().generation) << "\n";
  }
  if (sigma_checked) os << "sigma check: " << sigma_checked << " points, " << (sigma_violation ? "violation: " + *sigma_violation : "all inside") << "\n";
  os << "truncated: " << (truncated ? "yes" : "no") << "\n";
  return os.str();
}

ClosureReport run_general_algorithm(Configuration cfg, Adversary adv, const std::vector<Target>& targets,
                                    const ClosureOptions& opts, Configuration* final_cfg) {
  ClosureReport rep;
  for (const Target& t : targets) rep.targets.push_back({t.name, std::nullopt});
  const SigmaSpec* sigma = (opts.check_sigma && adv.sigma()) ? &*adv.sigma() : nullptr;
  const std::optional<ProjMap>& chart = opts.chart;
  if (chart) {
    Configuration mapped;
    for (const auto& e : cfg.points()) mapped.add(chart->apply(e.point), e.generation);
    for (const auto& e : cfg.lines()) mapped.add(chart->apply(e.line), e.generation);
    for (const Conic& c : cfg.curves()) mapped.add_curve(chart->apply(c));
    cfg = std::move(mapped);
  }
  // Σ membership of a working point; the chart usually is the Σ frame itself
  const bool chart_is_frame = chart && sigma && sigma->frame() && same_matrix(chart->matrix(), sigma->frame()->matrix());
  auto in_sigma = [&](const ProjPoint& p) {
    if (!chart) return sigma->accepts(p);
    if (chart_is_frame) return sigma->accepts_image(p);
    return sigma->accepts(chart->inverse().apply(p));
  };

  std::vector<std::optional<Vec3>> exact;
  for (const Target& t : targets) {
    if (chart && !t.point) throw std::invalid_argument("target " + t.name + " cannot be followed through a chart");
    if (t.point) exact.push_back((chart ? chart->apply(*t.point) : *t.point).normalized());
    else exact.push_back(std::nullopt);
  }
  auto all_reached = [&] {
    if (targets.empty()) return false;
    return std::all_of(rep.targets.begin(), rep.targets.end(), [](const TargetVerdict& t) { return t.reached_at.has_value(); });
  };

  int current = 0;
  // observed points arrive in canonical scaling
  auto observe = [&](const ProjPoint& p, bool stored) {
    for (std::size_t i = 0; i < targets.size(); ++i) {
      if (rep.targets[i].reached_at) continue;
      if (exact[i] ? same_vec(*exact[i], p.coords()) : targets[i].matches(p)) rep.targets[i].reached_at = current;
    }
    if (stored && sigma) {
      ++rep.sigma_checked;
      if (!rep.sigma_violation && !in_sigma(p)) {
        const ProjPoint orig = chart ? chart->inverse().apply(p) : p;
        rep.sigma_violation = orig.to_string() + " at generation " + std::to_string(current);
      }
    }
    return !rep.sigma_violation && !(opts.stop_when_reached && all_reached());
  };

  for (const auto& e : cfg.points()) observe(e.point, true);
  StepStats zero;
  zero.points = cfg.points().size();
  zero.lines = cfg.lines().size();
  for (const auto& e : cfg.points()) zero.max_degree = std::max(zero.max_degree, e.degree);
  rep.generations.push_back(zero);

  for (int g = 1; g <= opts.depth; ++g) {
    if (rep.sigma_violation || (opts.stop_when_reached && all_reached())) break;
    current = g;
    std::size_t added_before = 0;
    if (g == 1) {
      rep.adversary_points = general_position_quadruple(adv, &rep.adversary_rejections);
      for (const ProjPoint& p : rep.adversary_points) {
        const ProjPoint w = chart ? chart->apply(p) : p;
        const bool stored = cfg.add(w, 1).second;
        added_before += stored;
        observe(ProjPoint(w.normalized()), stored);
      }
    }
    StepStats st = closure_step(cfg, g, opts.limits, observe);
    st.new_points += added_before;
    rep.truncated = rep.truncated || st.truncated;
    rep.generations.push_back(st);
  }
  if (final_cfg) {
    if (chart) {
      const ProjMap back = chart->inverse();
      Configuration orig;
      for (const auto& e : cfg.points()) orig.add(back.apply(e.point), e.generation);
      for (const auto& e : cfg.lines()) orig.add(back.apply(e.line), e.generation);
      for (const Conic& c : cfg.curves()) orig.add_curve(back.apply(c));
      *final_cfg = std::move(orig);
    } else {
      *final_cfg = std::move(cfg);
    }
  }
  return rep;
}

}  // namespace straightedge
