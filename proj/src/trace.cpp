#include "straightedge/trace.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace straightedge {

const char* selector_name(Selector s) {
  switch (s) {
    case Selector::First:
      return "first";
    case Selector::Second:
      return "second";
    default:
      return "tangent";
  }
}

std::string Move::to_text() const {
  switch (kind) {
    case Kind::DrawLine:
      return "L " + id + " := line(" + a + ", " + b + ")";
    case Kind::MarkMeet:
      return "P " + id + " := meet(" + a + ", " + b + ")";
    case Kind::MarkOnCurve:
      return "P " + id + " := on(" + a + ", " + b + ", " + selector_name(selector) + ")";
    default:
      return "P " + id + " := adversary(" + region + ")";
  }
}

namespace {

template <class T>
const T& expect(const std::map<std::string, Object>& known, const std::string& id, const char* kind) {
  auto it = known.find(id);
  if (it == known.end()) throw GeometryError("reference to unknown id '" + id + "'");
  if (!std::holds_alternative<T>(it->second)) throw GeometryError("'" + id + "' is not a " + kind);
  return std::get<T>(it->second);
}

ProjPoint parse_region(const std::string& region, std::size_t max_degree) {
  std::string r = trim(region);
  if (r.rfind("at", 0) != 0) throw GeometryError("unsupported adversary region '" + region + "'");
  Object o = parse_object_text(r.substr(2), max_degree);
  if (!std::holds_alternative<ProjPoint>(o)) throw GeometryError("adversary region must name a point");
  return std::get<ProjPoint>(o);
}

}  // namespace

namespace {

// Dividing out a coordinate lets every value fall back to the smallest field holding it.
Object settle(const ProjPoint& p) { return ProjPoint(p.normalized()); }
Object settle(const ProjLine& l) { return l.realified(); }

Object execute_raw(const Move& m, const std::map<std::string, Object>& known, std::size_t max_degree);

}  // namespace

Object execute_move(const Move& m, const std::map<std::string, Object>& known, std::size_t max_degree) {
  Object o = execute_raw(m, known, max_degree);
  return std::visit([](const auto& x) -> Object {
    if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Conic>) {
      return x;
    } else {
      return settle(x);
    }
  }, o);
}

namespace {

Object execute_raw(const Move& m, const std::map<std::string, Object>& known, std::size_t max_degree) {
  using K = Move::Kind;
  switch (m.kind) {
    case K::DrawLine:
      return join(expect<ProjPoint>(known, m.a, "point"), expect<ProjPoint>(known, m.b, "point"));
    case K::MarkMeet:
      return meet(expect<ProjLine>(known, m.a, "line"), expect<ProjLine>(known, m.b, "line"));
    case K::MarkOnCurve: {
      const auto& l = expect<ProjLine>(known, m.a, "line");
      const auto& c = expect<Conic>(known, m.b, "curve");
      Intersection hit = line_conic_intersect(l, c, IntersectMode::RealOnly, max_degree);
      if (m.selector == Selector::Tangent) {
        if (!hit.tangent) throw GeometryError("line " + m.a + " is not tangent to " + m.b);
        return hit.points.front();
      }
      if (hit.tangent) throw GeometryError("line " + m.a + " is tangent to " + m.b + "; use the tangent selector");
      const std::size_t k = m.selector == Selector::First ? 0 : 1;
      if (hit.points.size() <= k) throw GeometryError("line " + m.a + " misses " + m.b);
      return hit.points[k];
    }
    default:
      return parse_region(m.region, max_degree);
  }
}

}  // namespace

const Object& Trace::at(const std::string& id) const {
  auto it = bindings.find(id);
  if (it == bindings.end()) throw std::out_of_range("unknown id '" + id + "'");
  return it->second;
}

const Object& Trace::claim(const std::string& name) const {
  for (const auto& c : claims) {
    if (c.name == name) return at(c.id);
  }
  throw std::out_of_range("unknown claim '" + name + "'");
}

Trace::ReplayResult Trace::replay(std::size_t max_degree) const {
  std::map<std::string, Object> known;
  for (const auto& d : scene.decls) {
    if (!scene.is_target(d.name)) known.emplace(d.name, d.value);
  }
  for (const auto& m : moves) {
    if (known.count(m.id)) return {false, "id '" + m.id + "' assigned twice"};
    try {
      Object o = execute_move(m, known, max_degree);
      auto it = bindings.find(m.id);
      if (it != bindings.end() && !same_object(it->second, o)) {
        return {false, "move '" + m.to_text() + "' produced " + object_text(o) + ", recorded " +
                           object_text(it->second)};
      }
      known.emplace(m.id, std::move(o));
    } catch (const ResourceError&) {
      throw;
    } catch (const std::exception& e) {
      return {false, "move '" + m.to_text() + "' failed: " + e.what()};
    }
  }
  for (const auto& c : claims) {
    auto it = known.find(c.id);
    if (it == known.end()) return {false, "claim '" + c.name + "' refers to unknown id '" + c.id + "'"};
    auto rec = bindings.find(c.id);
    if (rec != bindings.end() && !same_object(rec->second, it->second)) {
      return {false, "claim '" + c.name + "' does not match its replayed value"};
    }
  }
  return {};
}

std::string Trace::to_text() const {
  std::ostringstream out;
  out << scene.to_text();
  for (const auto& m : moves) out << m.to_text() << "\n";
  for (const auto& c : claims) out << "claim " << c.name << " = " << c.id << " @ " << object_text(at(c.id)) << "\n";
  return out.str();
}

Trace Trace::parse(std::string_view text, std::size_t max_degree) {
  Trace t;
  std::string scene_text;
  std::vector<std::pair<std::size_t, std::string>> rest;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw.substr(0, raw.find('#')));
    bool is_move = line.rfind("L ", 0) == 0 || line.rfind("P ", 0) == 0 || line.rfind("claim ", 0) == 0;
    if (is_move) {
      rest.emplace_back(lineno, line);
      scene_text += "\n";
    } else {
      scene_text += raw + "\n";
    }
  }
  t.scene = parse_scene(scene_text, max_degree);
  for (const auto& d : t.scene.decls) {
    if (!t.scene.is_target(d.name)) t.bindings.emplace(d.name, d.value);
  }
  for (const auto& [no, line] : rest) {
    try {
      if (line.rfind("claim ", 0) == 0) {
        auto eq = line.find('=');
        auto atpos = line.find('@');
        if (eq == std::string::npos) throw std::invalid_argument("expected 'claim NAME = ID'");
        Claim c{trim(line.substr(6, eq - 6)), trim(line.substr(eq + 1, atpos == std::string::npos ? std::string::npos : atpos - eq - 1))};
        if (!t.bindings.count(c.id)) throw std::invalid_argument("claim refers to unknown id '" + c.id + "'");
        if (atpos != std::string::npos) {
          Object expected = parse_object_text(line.substr(atpos + 1), max_degree);
          if (!same_object(expected, t.bindings.at(c.id))) {
            throw std::invalid_argument("claim '" + c.name + "' value does not match the construction");
          }
        }
        t.claims.push_back(c);
        continue;
      }
      auto assign = line.find(":=");
      if (assign == std::string::npos) throw std::invalid_argument("expected ':='");
      Move m;
      m.id = trim(line.substr(2, assign - 2));
      std::string rhs = trim(line.substr(assign + 2));
      auto open = rhs.find('(');
      if (open == std::string::npos || rhs.back() != ')') throw std::invalid_argument("malformed move");
      std::string op = trim(rhs.substr(0, open));
      std::string body = rhs.substr(open + 1, rhs.size() - open - 2);
      auto args = split_top_level(body, ',');
      if (op == "line" && line[0] == 'L' && args.size() == 2) {
        m.kind = Move::Kind::DrawLine;
      } else if (op == "meet" && line[0] == 'P' && args.size() == 2) {
        m.kind = Move::Kind::MarkMeet;
      } else if (op == "on" && line[0] == 'P' && args.size() == 3) {
        m.kind = Move::Kind::MarkOnCurve;
        if (args[2] == "first") {
          m.selector = Selector::First;
        } else if (args[2] == "second") {
          m.selector = Selector::Second;
        } else if (args[2] == "tangent") {
          m.selector = Selector::Tangent;
        } else {
          throw std::invalid_argument("unknown selector '" + args[2] + "'");
        }
      } else if (op == "adversary" && line[0] == 'P') {
        m.kind = Move::Kind::Adversary;
        m.region = trim(body);
      } else {
        throw std::invalid_argument("unknown move '" + op + "'");
      }
      if (m.kind != Move::Kind::Adversary) {
        m.a = args[0];
        m.b = args[1];
      }
      if (t.bindings.count(m.id)) throw std::invalid_argument("id '" + m.id + "' assigned twice");
      t.bindings.emplace(m.id, execute_move(m, t.bindings, max_degree));
      t.moves.push_back(std::move(m));
    } catch (const ResourceError&) {
      throw;
    } catch (const std::exception& e) {
      throw SceneError(e.what(), no);
    }
  }
  return t;
}

// ------------------------------------------------------------------ builder

std::string TraceBuilder::fresh(char prefix) { return std::string(1, prefix) + std::to_string(++counter_); }

std::string TraceBuilder::add_point(const std::string& name, const ProjPoint& p) {
  trace_.scene.add(name, p);
  trace_.bindings.emplace(name, p);
  return name;
}

std::string TraceBuilder::add_line(const std::string& name, const ProjLine& l) {
  trace_.scene.add(name, l);
  trace_.bindings.emplace(name, l);
  return name;
}

std::string TraceBuilder::add_curve(const std::string& name, const Conic& c) {
  trace_.scene.add(name, c);
  trace_.bindings.emplace(name, c);
  return name;
}

namespace {

Move make_move(Move::Kind kind, std::string id, std::string a, std::string b, Selector sel = Selector::First) {
  Move m;
  m.kind = kind;
  m.id = std::move(id);
  m.a = std::move(a);
  m.b = std::move(b);
  m.selector = sel;
  return m;
}

}  // namespace

std::string TraceBuilder::record(Move m) {
  Object o = execute_move(m, trace_.bindings, max_degree_);
  trace_.bindings.emplace(m.id, std::move(o));
  trace_.moves.push_back(m);
  return m.id;
}

std::string TraceBuilder::line(const std::string& p, const std::string& q) {
  return record(make_move(Move::Kind::DrawLine, fresh('l'), p, q));
}

std::string TraceBuilder::meet(const std::string& l, const std::string& m) {
  return record(make_move(Move::Kind::MarkMeet, fresh('p'), l, m));
}

std::string TraceBuilder::on(const std::string& l, const std::string& curve, Selector sel) {
  return record(make_move(Move::Kind::MarkOnCurve, fresh('p'), l, curve, sel));
}

std::string TraceBuilder::other_on(const std::string& l, const std::string& curve, const std::string& p) {
  Intersection hit = line_conic_intersect(line_of(l), this->curve(curve), IntersectMode::RealOnly, max_degree_);
  if (hit.tangent) return on(l, curve, Selector::Tangent);
  if (hit.points.size() != 2) throw GeometryError("line " + l + " does not cross " + curve);
  const ProjPoint& known = point(p);
  if (hit.points[0] == known) return on(l, curve, Selector::Second);
  if (hit.points[1] == known) return on(l, curve, Selector::First);
  throw GeometryError("point " + p + " is not on line " + l + " and " + curve);
}

std::string TraceBuilder::adversary(const ProjPoint& p) {
  Move m = make_move(Move::Kind::Adversary, fresh('w'), "", "");
  m.region = "at" + p.to_string();
  return record(m);
}

void TraceBuilder::rollback(std::size_t mark) {
  while (trace_.moves.size() > mark) {
    trace_.bindings.erase(trace_.moves.back().id);
    trace_.moves.pop_back();
  }
}

void TraceBuilder::claim(const std::string& name, const std::string& id) {
  if (!trace_.bindings.count(id)) throw std::out_of_range("claim of unknown id '" + id + "'");
  trace_.claims.push_back({name, id});
}

const ProjPoint& TraceBuilder::point(const std::string& id) const { return std::get<ProjPoint>(trace_.at(id)); }
const ProjLine& TraceBuilder::line_of(const std::string& id) const { return std::get<ProjLine>(trace_.at(id)); }
const Conic& TraceBuilder::curve(const std::string& id) const { return std::get<Conic>(trace_.at(id)); }

// ---------------------------------------------------------------------- svg

namespace {

struct Box {
  double x0 = 1e300, y0 = 1e300, x1 = -1e300, y1 = -1e300;
  void add(double x, double y) {
    x0 = std::min(x0, x);
    y0 = std::min(y0, y);
    x1 = std::max(x1, x);
    y1 = std::max(y1, y);
  }
  bool empty() const { return x0 > x1; }
};

bool approx_point(const ProjPoint& p, double& x, double& y) {
  if (!p.is_finite() || !p.is_real()) return false;
  x = p.x().approx();
  y = p.y().approx();
  return true;
}

std::array<double, 6> approx_conic(const Conic& c) {
  auto k = c.coefficients();
  std::array<double, 6> out{};
  for (int i = 0; i < 6; ++i) out[i] = k[i].is_real() ? k[i].approx() : 0.0;
  return out;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace

std::string render_svg(const Trace& t, const SvgOptions& opts) {
  Box box;
  double x, y;
  for (const auto& [id, obj] : t.bindings) {
    if (const auto* p = std::get_if<ProjPoint>(&obj); p && approx_point(*p, x, y)) box.add(x, y);
    if (const auto* c = std::get_if<Conic>(&obj); c && is_circle(*c) && c->is_real()) {
      auto k = approx_conic(*c);
      double cx = -k[3] / (2 * k[0]), cy = -k[4] / (2 * k[0]);
      double r = std::sqrt(std::max(0.0, cx * cx + cy * cy - k[5] / k[0]));
      box.add(cx - r, cy - r);
      box.add(cx + r, cy + r);
    }
  }
  if (box.empty()) box = {-1, -1, 1, 1};
  const double pad = 0.1 * std::max({box.x1 - box.x0, box.y1 - box.y0, 1.0});
  box = {box.x0 - pad, box.y0 - pad, box.x1 + pad, box.y1 + pad};
  const double scale = std::min(opts.width / (box.x1 - box.x0), opts.height / (box.y1 - box.y0));
  auto sx = [&](double v) { return fmt((v - box.x0) * scale); };
  auto sy = [&](double v) { return fmt((box.y1 - v) * scale); };

  auto line_elem = [&](const ProjLine& l, const char* cls) {
    std::string out = std::string("<line class=\"") + cls + "\"";
    bool drawn = false;
    if (l.is_real()) {
      ProjLine r = l.realified();
      const auto& c = r.coeffs();
      double u = c[0].approx(), v = c[1].approx(), w = c[2].approx();
      std::vector<std::pair<double, double>> ends;
      if (std::abs(v) > 1e-300) {
        for (double xe : {box.x0, box.x1}) ends.emplace_back(xe, -(u * xe + w) / v);
      }
      if (std::abs(u) > 1e-300) {
        for (double ye : {box.y0, box.y1}) ends.emplace_back(-(v * ye + w) / u, ye);
      }
      std::vector<std::pair<double, double>> inside;
      for (auto& e : ends) {
        if (e.first >= box.x0 - 1e-9 && e.first <= box.x1 + 1e-9 && e.second >= box.y0 - 1e-9 &&
            e.second <= box.y1 + 1e-9) {
          inside.push_back(e);
        }
      }
      if (inside.size() >= 2) {
        out += " x1=\"" + sx(inside[0].first) + "\" y1=\"" + sy(inside[0].second) + "\" x2=\"" +
               sx(inside.back().first) + "\" y2=\"" + sy(inside.back().second) + "\"";
        drawn = true;
      }
    }
    if (!drawn) out += " x1=\"0\" y1=\"0\" x2=\"0\" y2=\"0\" visibility=\"hidden\"";
    return out + " stroke=\"#555\" stroke-width=\"1\"/>";
  };
  auto point_elem = [&](const ProjPoint& p, const char* cls, const char* fill) {
    double px, py;
    if (!approx_point(p, px, py)) return std::string("<circle class=\"") + cls + "\" r=\"0\" visibility=\"hidden\"/>";
    return std::string("<circle class=\"") + cls + "\" cx=\"" + sx(px) + "\" cy=\"" + sy(py) + "\" r=\"3\" fill=\"" +
           fill + "\"/>";
  };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(opts.width) << "\" height=\"" << fmt(opts.height)
      << "\">\n";
  for (const auto& d : t.scene.decls) {
    if (const auto* p = std::get_if<ProjPoint>(&d.value)) {
      out << point_elem(*p, "scene", "#000") << "\n";
    } else if (const auto* l = std::get_if<ProjLine>(&d.value)) {
      out << line_elem(*l, "scene") << "\n";
    } else {
      const Conic& c = std::get<Conic>(d.value);
      auto k = approx_conic(c);
      if (is_circle(c) && c.is_real()) {
        double cx = -k[3] / (2 * k[0]), cy = -k[4] / (2 * k[0]);
        double r = std::sqrt(std::max(0.0, cx * cx + cy * cy - k[5] / k[0]));
        out << "<circle class=\"scene\" cx=\"" << sx(cx) << "\" cy=\"" << sy(cy) << "\" r=\"" << fmt(r * scale)
            << "\" fill=\"none\" stroke=\"#000\"/>\n";
      } else {
        // two branches y(x) sampled across the box
        for (int branch : {-1, 1}) {
          out << "<polyline class=\"scene\" fill=\"none\" stroke=\"#000\" points=\"";
          for (int s = 0; s <= 400; ++s) {
            double px = box.x0 + (box.x1 - box.x0) * s / 400.0;
            double qa = k[2], qb = k[1] * px + k[4], qc = k[0] * px * px + k[3] * px + k[5];
            double py;
            if (std::abs(qa) < 1e-300) {
              if (std::abs(qb) < 1e-300) continue;
              py = -qc / qb;
            } else {
              double disc = qb * qb - 4 * qa * qc;
              if (disc < 0) continue;
              py = (-qb + branch * std::sqrt(disc)) / (2 * qa);
            }
            if (py < box.y0 || py > box.y1) continue;
            out << sx(px) << "," << sy(py) << " ";
          }
          out << "\"/>\n";
        }
      }
    }
  }
  for (const auto& m : t.moves) {
    const Object& o = t.at(m.id);
    if (const auto* l = std::get_if<ProjLine>(&o)) {
      out << line_elem(*l, "move") << "\n";
    } else {
      out << point_elem(std::get<ProjPoint>(o), "move", m.kind == Move::Kind::Adversary ? "#c00" : "#06c") << "\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace straightedge
