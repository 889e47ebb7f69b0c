#include "json.hpp"
#include "straightedge/certificates.hpp"

namespace straightedge {

using nlohmann::json;

namespace {

json poly_json(const RationalPoly& p) {
  json out = json::array();
  for (const auto& c : p.coeffs()) out.push_back(c.get_str());
  return out;
}

RationalPoly poly_from(const json& j) {
  std::vector<Rational> c;
  for (const auto& v : j) c.emplace_back(v.get<std::string>());
  for (auto& v : c) v.canonicalize();
  return RationalPoly(std::move(c));
}

const char* kind_name(SigmaSpec::Kind k) {
  switch (k) {
    case SigmaSpec::Kind::Rational: return "rational";
    case SigmaSpec::Kind::TowerWitnessed: return "tower-witnessed";
    case SigmaSpec::Kind::Subfield: return "subfield";
    case SigmaSpec::Kind::Custom: return "custom";
  }
  return "?";
}

Obstruction::Kind obstruction_kind(const std::string& s) {
  for (auto k : {Obstruction::Kind::Cubic, Obstruction::Kind::Quartic, Obstruction::Kind::NoRational})
    if (s == obstruction_kind_name(k)) return k;
  throw std::invalid_argument("unknown obstruction kind: " + s);
}

json vec_json(const Vec3& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(x.to_string());
  return out;
}

Vec3 vec_from(const json& j) {
  if (!j.is_array() || j.size() != 3) throw std::invalid_argument("expected three expressions");
  return {parse_number(j[0].get<std::string>()), parse_number(j[1].get<std::string>()),
          parse_number(j[2].get<std::string>())};
}

}  // namespace

std::string certificate_to_json(const Certificate& cert) {
  json j;
  j["scenario"] = cert.scenario;
  json pred;
  pred["kind"] = kind_name(cert.sigma.kind());
  if (cert.sigma.kind() == SigmaSpec::Kind::Custom)
    throw std::invalid_argument("custom predicate " + cert.sigma.name() + " cannot be serialized");
  if (cert.sigma.kind() == SigmaSpec::Kind::Subfield) {
    pred["radicands"] = json::array();
    for (const auto& r : cert.sigma.radicands()) pred["radicands"].push_back(r.get_str());
  }
  if (cert.sigma.frame()) {
    json rows = json::array();
    for (int i = 0; i < 3; ++i) {
      const Mat3& m = cert.sigma.frame()->matrix();
      rows.push_back(vec_json({m(i, 0), m(i, 1), m(i, 2)}));
    }
    pred["frame"] = rows;
  } else {
    pred["frame"] = nullptr;
  }
  j["predicate"] = pred;
  j["configuration"] = cert.configuration.to_text();
  j["targets"] = json::array();
  for (const auto& t : cert.targets) {
    json tj{{"name", t.name}};
    if (t.point) tj["point"] = vec_json(t.point->normalized());
    else tj["x_root"] = poly_json(t.x_root);
    j["targets"].push_back(tj);
  }
  j["obstructions"] = json::array();
  for (const auto& o : cert.obstructions)
    j["obstructions"].push_back({{"kind", obstruction_kind_name(o.kind)}, {"poly", poly_json(o.poly)},
                                 {"transcript", o.transcript()}});
  j["exclusions"] = json::array();
  for (const auto& e : cert.exclusions)
    j["exclusions"].push_back({{"target", e.target},
                               {"coordinate", e.coordinate},
                               {"annihilator", poly_json(e.annihilator)},
                               {"obstruction", e.obstruction},
                               {"link", poly_json(e.link)}});
  j["perpendicular_obstruction"] =
      cert.perpendicular_obstruction ? json(*cert.perpendicular_obstruction) : json(nullptr);
  j["notes"] = cert.notes;
  return j.dump(2) + "\n";
}

Certificate certificate_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    const json& pred = j.at("predicate");
    std::optional<ProjMap> frame;
    if (!pred.at("frame").is_null()) {
      const json& rows = pred.at("frame");
      if (!rows.is_array() || rows.size() != 3) throw std::invalid_argument("frame needs three rows");
      frame = ProjMap(Mat3::from_rows({vec_from(rows[0]), vec_from(rows[1]), vec_from(rows[2])}));
    }
    const std::string kind = pred.at("kind").get<std::string>();
    std::optional<SigmaSpec> sigma;
    if (kind == "rational") sigma = SigmaSpec::rational(frame);
    else if (kind == "tower-witnessed") sigma = SigmaSpec::tower_witnessed(frame);
    else if (kind == "subfield") {
      std::vector<Rational> radicands;
      for (const auto& r : pred.at("radicands")) radicands.emplace_back(r.get<std::string>());
      for (auto& r : radicands) r.canonicalize();
      sigma = SigmaSpec::subfield(radicands, frame);
    } else {
      throw std::invalid_argument("unsupported predicate kind: " + kind);
    }
    Certificate c{j.at("scenario").get<std::string>(), *sigma, parse_scene(j.at("configuration").get<std::string>()),
                  {}, {}, {}, std::nullopt, {}};
    for (const auto& t : j.at("targets")) {
      const std::string name = t.at("name").get<std::string>();
      if (t.contains("point")) c.targets.push_back(Target::exact(name, ProjPoint(vec_from(t.at("point")))));
      else c.targets.push_back(Target::algebraic(name, poly_from(t.at("x_root"))));
    }
    for (const auto& o : j.at("obstructions"))
      c.obstructions.push_back({obstruction_kind(o.at("kind").get<std::string>()), poly_from(o.at("poly"))});
    for (const auto& e : j.at("exclusions"))
      c.exclusions.push_back({e.at("target").get<std::string>(), e.at("coordinate").get<int>(),
                              poly_from(e.at("annihilator")), e.at("obstruction").get<std::size_t>(),
                              poly_from(e.at("link"))});
    if (!j.at("perpendicular_obstruction").is_null())
      c.perpendicular_obstruction = j.at("perpendicular_obstruction").get<std::size_t>();
    c.notes = j.at("notes").get<std::vector<std::string>>();
    return c;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed certificate: ") + e.what());
  } catch (const ParseError& e) {
    throw std::invalid_argument(std::string("malformed certificate expression: ") + e.what());
  } catch (const SceneError& e) {
    throw std::invalid_argument(std::string("malformed certificate configuration: ") + e.what());
  }
}

}  // namespace straightedge
