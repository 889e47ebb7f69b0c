#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "straightedge/certificates.hpp"
#include "straightedge/constructions.hpp"

using namespace straightedge;

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kResource = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::uint64_t seed = 1;
  int depth = 3;
  std::size_t max_points = ClosureLimits{}.max_points;
  std::size_t max_degree = kDefaultMaxDegree;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

Scene load_scene(const std::string& path, std::size_t max_degree) {
  const std::string text = read_file(path);
  try {
    return parse_scene(text, max_degree);
  } catch (const SceneError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

// Scene objects handed to a construction: explicit names when given, else the
// declarations of each kind in order.
class Arguments {
 public:
  Arguments(const Scene& s, const std::vector<std::string>& names) {
    if (!names.empty()) {
      for (const auto& n : names) {
        const Declaration* d = s.find(n);
        if (!d) throw UsageError("no object named " + n);
        pick(*d);
      }
    } else {
      for (const auto& d : s.decls) pick(d);
    }
  }
  const ProjPoint& point(std::size_t k) const { return std::get<ProjPoint>(need(points_, k, "point")->value); }
  const ProjLine& line(std::size_t k) const { return std::get<ProjLine>(need(lines_, k, "line")->value); }
  const Conic& conic(std::size_t k) const { return std::get<Conic>(need(conics_, k, "conic")->value); }

 private:
  void pick(const Declaration& d) {
    if (std::holds_alternative<ProjPoint>(d.value)) points_.push_back(&d);
    else if (std::holds_alternative<ProjLine>(d.value)) lines_.push_back(&d);
    else conics_.push_back(&d);
  }
  static const Declaration* need(const std::vector<const Declaration*>& v, std::size_t k, const char* kind) {
    if (k >= v.size()) throw UsageError("construction needs at least " + std::to_string(k + 1) + " " + kind + "(s)");
    return v[k];
  }
  std::vector<const Declaration*> points_, lines_, conics_;
};

using Builder = std::function<Trace(const Arguments&, std::size_t)>;

const std::map<std::string, Builder>& constructions() {
  static const std::map<std::string, Builder> table = {
      {"parallel-from-midpoint",
       [](const Arguments& a, std::size_t md) {
         return parallel_from_midpoint(a.point(0), a.point(1), a.point(2), a.point(3), md).trace;
       }},
      {"midpoint-from-parallel",
       [](const Arguments& a, std::size_t md) { return midpoint_from_parallel(a.point(0), a.point(1), a.line(0), md).trace; }},
      {"centers-intersecting",
       [](const Arguments& a, std::size_t md) {
         return centers_of_intersecting_circles(a.conic(0), a.conic(1), a.point(0), a.point(1), md).trace;
       }},
      {"center-concentric",
       [](const Arguments& a, std::size_t md) { return center_of_concentric(a.conic(0), a.conic(1), md).trace; }},
      {"tangents", [](const Arguments& a, std::size_t md) { return tangents_from_point(a.point(0), a.conic(0), md).trace; }},
      {"pascal",
       [](const Arguments& a, std::size_t md) {
         return pascal_second_intersection({a.point(0), a.point(1), a.point(2), a.point(3), a.point(4)}, a.line(0), md)
             .trace;
       }},
  };
  return table;
}

int cmd_construct(const Globals& g, const std::string& scene_path, const std::string& name,
                  const std::vector<std::string>& use, const std::string& trace_path, const std::string& svg_path) {
  const auto& table = constructions();
  auto it = table.find(name);
  if (it == table.end()) {
    std::string known;
    for (const auto& [k, v] : table) known += " " + k;
    throw UsageError("unknown construction " + name + "; known:" + known);
  }
  const Scene scene = load_scene(scene_path, g.max_degree);
  Trace trace;
  try {
    trace = it->second(Arguments(scene, use), g.max_degree);
  } catch (const GeometryError& e) {
    std::cout << "construction failed: " << e.what() << "\n";
    return kFail;
  } catch (const std::invalid_argument& e) {
    std::cout << "construction failed: " << e.what() << "\n";
    return kFail;
  }
  const auto replay = trace.replay(g.max_degree);
  std::cout << "construction " << name << ": " << trace.moves.size() << " moves\n";
  for (const Claim& c : trace.claims) std::cout << "claim " << c.name << " = " << object_text(trace.claim(c.name)) << "\n";
  std::cout << "replay: " << (replay.ok ? "ok" : "FAILED " + replay.detail) << "\n";
  if (!replay.ok) return kFail;
  if (!trace_path.empty()) write_file(trace_path, trace.to_text());
  if (!svg_path.empty()) write_file(svg_path, render_svg(trace));
  return kPass;
}

Certificate load_certificate(const std::string& what) {
  for (const auto& n : scenario_names())
    if (n == what) return scenario_by_name(what);
  try {
    return certificate_from_json(read_file(what));
  } catch (const std::invalid_argument& e) {
    throw UsageError(what + ": " + e.what());
  }
}

int cmd_certify(const Globals& g, const std::string& what, std::size_t samples, const std::string& out_path,
                bool duality) {
  const Certificate cert = load_certificate(what);
  if (!out_path.empty()) write_file(out_path, certificate_to_json(cert));
  std::cout << "certificate " << cert.scenario << " (" << cert.sigma.describe() << ")\n";
  const CertificateCheck check = check_certificate(cert, samples, g.seed);
  std::cout << check.to_text();
  bool ok = check.passed();
  if (duality) {
    ClosureLimits lim = duality_limits(cert);
    lim.max_points = g.max_points;
    lim.max_degree = g.max_degree;
    const DualityReport rep = run_duality(cert, g.seed, g.depth, lim);
    std::cout << rep.to_text();
    ok = ok && rep.passed();
    std::cout << "overall: " << (ok ? "pass" : "fail") << "\n";
  }
  return ok ? kPass : kFail;
}

// rational | sigma:SCENARIO
Adversary make_adversary(const std::string& spec, std::uint64_t seed, ClosureOptions& opts,
                         const std::vector<Target>& targets) {
  if (spec == "rational") return Adversary::rational_dense(seed);
  if (spec.rfind("sigma:", 0) == 0) {
    const std::string name = spec.substr(6);
    Certificate cert = [&] {
      try {
        return scenario_by_name(name);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
    }();
    opts.limits.work_budget = duality_limits(cert).work_budget;
    bool exact = true;
    for (const auto& t : targets) exact = exact && t.point.has_value();
    if (cert.sigma.frame() && exact) opts.chart = cert.sigma.frame();
    return Adversary::sigma_dense(cert.sigma, seed);
  }
  throw UsageError("adversary must be 'rational' or 'sigma:SCENARIO'");
}

int cmd_closure(const Globals& g, const std::string& scene_path, const std::string& adversary,
                const std::vector<std::string>& extra_targets) {
  const Scene scene = load_scene(scene_path, g.max_degree);
  std::vector<std::string> names = scene.targets;
  names.insert(names.end(), extra_targets.begin(), extra_targets.end());
  Configuration cfg;
  std::vector<Target> targets;
  for (const Declaration& d : scene.decls) {
    if (std::find(names.begin(), names.end(), d.name) != names.end()) {
      if (!std::holds_alternative<ProjPoint>(d.value)) throw UsageError("target " + d.name + " is not a point");
      if (std::none_of(targets.begin(), targets.end(), [&](const Target& t) { return t.name == d.name; }))
        targets.push_back(Target::exact(d.name, std::get<ProjPoint>(d.value)));
      continue;
    }
    if (const auto* p = std::get_if<ProjPoint>(&d.value)) cfg.add(*p, 0);
    else if (const auto* l = std::get_if<ProjLine>(&d.value)) cfg.add(*l, 0);
    else cfg.add_curve(std::get<Conic>(d.value));
  }
  for (const auto& n : extra_targets)
    if (!scene.find(n)) throw UsageError("no object named " + n);

  ClosureOptions opts;
  opts.depth = g.depth;
  opts.limits.max_points = g.max_points;
  opts.limits.max_lines = g.max_points;
  opts.limits.max_degree = g.max_degree;
  Adversary adv = make_adversary(adversary, g.seed, opts, targets);
  std::cout << "initial: " << cfg.points().size() << " points, " << cfg.lines().size() << " lines, "
            << cfg.curves().size() << " curves\n";
  std::cout << "adversary: " << adv.describe() << "\n";
  const ClosureReport rep = run_general_algorithm(std::move(cfg), std::move(adv), targets, opts);
  std::cout << rep.to_text();
  return rep.sigma_violation ? kFail : kPass;
}

int cmd_field(const Globals& g, const std::string& expr, const std::string& equals,
              const std::vector<std::string>& radicands) {
  Number x;
  try {
    x = parse_number(expr, g.max_degree);
  } catch (const ParseError& e) {
    throw UsageError("at " + std::to_string(e.position()) + ": " + e.what());
  }
  std::cout << "value: " << x.to_string() << "\n";
  std::cout << "degree: " << x.degree() << "\n";
  std::cout << "real: " << (x.is_real() ? "yes" : "no") << "\n";
  if (x.is_real()) {
    std::ostringstream approx;
    approx.precision(12);
    approx << x.approx();
    std::cout << "sign: " << x.sign() << "\n";
    std::cout << "approx: " << approx.str() << "\n";
  }
  std::cout << "rational: " << (x.is_rational() ? "yes" : "no") << "\n";
  bool ok = true;
  if (!equals.empty()) {
    Number y;
    try {
      y = parse_number(equals, g.max_degree);
    } catch (const ParseError& e) {
      throw UsageError("at " + std::to_string(e.position()) + ": " + e.what());
    }
    const bool same = x == y;
    std::cout << "equals " << y.to_string() << ": " << (same ? "yes" : "no") << "\n";
    ok = ok && same;
  }
  if (!radicands.empty()) {
    std::vector<Rational> rs;
    for (const auto& r : radicands) {
      try {
        Rational q(r);
        q.canonicalize();
        rs.push_back(q);
      } catch (const std::invalid_argument&) {
        throw UsageError("radicand must be a rational number: " + r);
      }
    }
    const SigmaSpec field = SigmaSpec::subfield(rs, std::nullopt);
    const bool member = field.accepts_value(x);
    std::cout << "member of " << field.describe() << ": " << (member ? "yes" : "no") << "\n";
    ok = ok && member;
  }
  return ok ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact straightedge constructions, closures and certificates"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "seed for adversaries and sampling");
  app.add_option("--depth", g.depth, "closure depth")->check(CLI::NonNegativeNumber);
  app.add_option("--max-points", g.max_points, "new points kept per closure generation")->check(CLI::PositiveNumber);
  app.add_option("--max-degree", g.max_degree, "largest tower degree before giving up")->check(CLI::PositiveNumber);

  std::function<int()> run;

  auto* construct = app.add_subcommand("construct", "run a named construction on a scene and record its trace");
  std::string scene_path, construction, trace_path, svg_path;
  std::vector<std::string> use;
  construct->add_option("scene", scene_path, "scene file")->required();
  construct->add_option("construction", construction,
                        "parallel-from-midpoint, midpoint-from-parallel, centers-intersecting, center-concentric, "
                        "tangents or pascal")
      ->required();
  construct->add_option("--use", use, "scene objects to pass, in order (default: declaration order)")
      ->delimiter(',');
  construct->add_option("-o,--trace", trace_path, "write the trace here");
  construct->add_option("--svg", svg_path, "write a figure of scene and trace here");
  construct->callback([&] { run = [&] { return cmd_construct(g, scene_path, construction, use, trace_path, svg_path); }; });

  auto* certify = app.add_subcommand("certify", "check a shipped scenario or a certificate file");
  std::string what, cert_out;
  std::size_t samples = 500;
  bool duality = false;
  certify->add_option("certificate", what, "scenario name or JSON file")->required();
  certify->add_option("--samples", samples, "sampled instances per condition")->check(CLI::PositiveNumber);
  certify->add_option("--write", cert_out, "write the certificate as JSON");
  certify->add_flag("--duality", duality, "also run the closure under the certificate's adversary");
  certify->callback([&] { run = [&] { return cmd_certify(g, what, samples, cert_out, duality); }; });

  auto* closure = app.add_subcommand("closure", "run the general algorithm on a scene");
  std::string closure_scene, adversary = "rational";
  std::vector<std::string> extra_targets;
  closure->add_option("scene", closure_scene, "scene file; declared targets are looked for, not given")->required();
  closure->add_option("--adversary", adversary, "rational or sigma:SCENARIO");
  closure->add_option("--target", extra_targets, "more scene points to treat as targets");
  closure->callback([&] { run = [&] { return cmd_closure(g, closure_scene, adversary, extra_targets); }; });

  auto* field = app.add_subcommand("field", "evaluate an expression exactly");
  std::string expr, equals;
  std::vector<std::string> radicands;
  field->add_option("expr", expr, "expression, e.g. 'sqrt(2)*sqrt(8)'")->required();
  field->add_option("--equals", equals, "compare with another expression");
  field->add_option("--in", radicands, "membership in Q(sqrt(r1), ...)")->delimiter(',');
  field->callback([&] { run = [&] { return cmd_field(g, expr, equals, radicands); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }
  try {
    return run();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kResource;
  } catch (const std::exception& e) {
    std::cout << "failed: " << e.what() << "\n";
    return kFail;
  }
}
