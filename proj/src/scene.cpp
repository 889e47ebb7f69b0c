#include "straightedge/scene.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace straightedge {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_top_level(std::string_view text, char sep) {
  std::vector<std::string> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t k = 0; k < text.size(); ++k) {
    char c = text[k];
    if (c == '(' || c == '[' || c == '{') ++depth;
    if (c == ')' || c == ']' || c == '}') --depth;
    if (c == sep && depth == 0) {
      parts.push_back(trim(text.substr(start, k - start)));
      start = k + 1;
    }
  }
  parts.push_back(trim(text.substr(start)));
  return parts;
}

bool same_object(const Object& a, const Object& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        return x == std::get<T>(b);
      },
      a);
}

std::string object_text(const Object& o) {
  return std::visit([](const auto& x) { return x.to_string(); }, o);
}

const char* object_kind(const Object& o) {
  switch (o.index()) {
    case 0:
      return "point";
    case 1:
      return "line";
    default:
      return "conic";
  }
}

namespace {

std::string inner(std::string_view text, char open, char close) {
  std::string t = trim(text);
  if (t.size() < 2 || t.front() != open || t.back() != close) {
    throw std::invalid_argument(std::string("expected ") + open + "..." + close);
  }
  return t.substr(1, t.size() - 2);
}

std::vector<Number> parse_list(std::string_view body, char sep, std::size_t count, std::size_t max_degree) {
  auto parts = split_top_level(body, sep);
  if (parts.size() != count) {
    throw std::invalid_argument("expected " + std::to_string(count) + " components, got " +
                                std::to_string(parts.size()));
  }
  std::vector<Number> out;
  for (const auto& p : parts) out.push_back(parse_number(p, max_degree));
  return out;
}

}  // namespace

Object parse_object_text(std::string_view text, std::size_t max_degree) {
  std::string t = trim(text);
  if (t.empty()) throw std::invalid_argument("empty object");
  if (t.front() == '(') {
    std::string body = inner(t, '(', ')');
    if (split_top_level(body, ':').size() == 3) {
      auto v = parse_list(body, ':', 3, max_degree);
      return ProjPoint(v[0], v[1], v[2]);
    }
    auto v = parse_list(body, ',', 2, max_degree);
    return ProjPoint::affine(v[0], v[1]);
  }
  if (t.front() == '[') {
    auto v = parse_list(inner(t, '[', ']'), ':', 3, max_degree);
    return ProjLine(v[0], v[1], v[2]);
  }
  if (t.front() == '{') {
    auto v = parse_list(inner(t, '{', '}'), ',', 6, max_degree);
    return Conic::from_coefficients({v[0], v[1], v[2], v[3], v[4], v[5]});
  }
  throw std::invalid_argument("unrecognised object '" + t + "'");
}

const Declaration* Scene::find(const std::string& name) const {
  for (const auto& d : decls) {
    if (d.name == name) return &d;
  }
  return nullptr;
}

namespace {

template <class T>
const T& typed(const Scene& s, const std::string& name, const char* kind) {
  const Declaration* d = s.find(name);
  if (!d) throw std::out_of_range("undefined name '" + name + "'");
  if (!std::holds_alternative<T>(d->value)) throw std::out_of_range("'" + name + "' is not a " + kind);
  return std::get<T>(d->value);
}

}  // namespace

const ProjPoint& Scene::point(const std::string& name) const { return typed<ProjPoint>(*this, name, "point"); }
const ProjLine& Scene::line(const std::string& name) const { return typed<ProjLine>(*this, name, "line"); }
const Conic& Scene::conic(const std::string& name) const { return typed<Conic>(*this, name, "conic"); }

bool Scene::is_target(const std::string& name) const {
  return std::find(targets.begin(), targets.end(), name) != targets.end();
}

void Scene::add(const std::string& name, Object value) {
  if (find(name)) throw std::invalid_argument("duplicate name '" + name + "'");
  decls.push_back({name, std::move(value), std::nullopt});
}

std::string Scene::to_text() const {
  std::ostringstream out;
  for (const auto& [k, v] : options) out << "option " << k << " = " << v << "\n";
  for (const auto& d : decls) {
    out << object_kind(d.value) << " " << d.name << " = ";
    if (d.joined) {
      out << "join(" << d.joined->first << ", " << d.joined->second << ")";
    } else {
      out << object_text(d.value);
    }
    out << "\n";
  }
  for (const auto& t : targets) out << "target " << t << "\n";
  return out.str();
}

namespace {

bool valid_name(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

void parse_line(Scene& scene, const std::string& text, std::size_t max_degree) {
  std::istringstream words(text);
  std::string keyword;
  words >> keyword;
  if (keyword == "target") {
    std::string name, extra;
    words >> name >> extra;
    if (!valid_name(name) || !extra.empty()) throw std::invalid_argument("expected 'target NAME'");
    if (!scene.find(name)) throw std::invalid_argument("target '" + name + "' is not declared");
    scene.targets.push_back(name);
    return;
  }
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw std::invalid_argument("expected '='");
  std::istringstream head(text.substr(0, eq));
  std::string kw, name, extra;
  head >> kw >> name >> extra;
  if (!valid_name(name) || !extra.empty()) throw std::invalid_argument("bad name in declaration");
  const std::string rhs = trim(std::string_view(text).substr(eq + 1));
  if (kw == "option") {
    scene.options[name] = rhs;
    return;
  }
  if (scene.find(name)) throw std::invalid_argument("duplicate name '" + name + "'");
  if (kw == "point") {
    Object o = parse_object_text(rhs, max_degree);
    if (!std::holds_alternative<ProjPoint>(o)) throw std::invalid_argument("point expects (x, y)");
    scene.add(name, o);
  } else if (kw == "line") {
    if (rhs.rfind("join", 0) == 0) {
      auto args = split_top_level(inner(trim(rhs.substr(4)), '(', ')'), ',');
      if (args.size() != 2) throw std::invalid_argument("join expects two points");
      ProjLine l = join(scene.point(args[0]), scene.point(args[1]));
      scene.decls.push_back({name, l, std::make_pair(args[0], args[1])});
    } else {
      Object o = parse_object_text(rhs, max_degree);
      if (!std::holds_alternative<ProjLine>(o)) throw std::invalid_argument("line expects [u : v : w]");
      scene.add(name, o);
    }
  } else if (kw == "conic") {
    Object o = parse_object_text(rhs, max_degree);
    if (!std::holds_alternative<Conic>(o)) throw std::invalid_argument("conic expects six coefficients");
    scene.add(name, o);
  } else if (kw == "circle") {
    const auto rpos = rhs.find("radius");
    if (rhs.rfind("center", 0) != 0 || rpos == std::string::npos) {
      throw std::invalid_argument("circle expects center(x, y) radius r");
    }
    auto c = parse_list(inner(trim(rhs.substr(6, rpos - 6)), '(', ')'), ',', 2, max_degree);
    Number r = parse_number(rhs.substr(rpos + 6), max_degree);
    if (r.is_zero() || !r.is_real() || r.sign() < 0) throw std::invalid_argument("radius must be positive");
    scene.add(name, Conic::circle(c[0], c[1], r * r));
  } else {
    throw std::invalid_argument("unknown declaration '" + kw + "'");
  }
}

}  // namespace

Scene parse_scene(std::string_view text, std::size_t max_degree) {
  Scene scene;
  std::size_t lineno = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    try {
      parse_line(scene, line, max_degree);
    } catch (const ResourceError&) {
      throw;
    } catch (const std::exception& e) {
      throw SceneError(e.what(), lineno);
    }
  }
  return scene;
}

}  // namespace straightedge
