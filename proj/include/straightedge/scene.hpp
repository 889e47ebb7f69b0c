#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "straightedge/projective.hpp"

namespace straightedge {

class SceneError : public std::runtime_error {
 public:
  SceneError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

using Object = std::variant<ProjPoint, ProjLine, Conic>;

bool same_object(const Object& a, const Object& b);
std::string object_text(const Object& o);
const char* object_kind(const Object& o);

/// Expression-text value of an object: "(x, y)", "(X : Y : Z)", "[u : v : w]" or "{a, b, c, d, e, f}".
Object parse_object_text(std::string_view text, std::size_t max_degree = kDefaultMaxDegree);

struct Declaration {
  std::string name;
  Object value;
  std::optional<std::pair<std::string, std::string>> joined;  // line given as join(A, B)
};

struct Scene {
  std::vector<Declaration> decls;
  std::vector<std::string> targets;
  std::map<std::string, std::string> options;

  const Declaration* find(const std::string& name) const;
  const ProjPoint& point(const std::string& name) const;
  const ProjLine& line(const std::string& name) const;
  const Conic& conic(const std::string& name) const;
  bool is_target(const std::string& name) const;

  void add(const std::string& name, Object value);

  std::string to_text() const;
};

/// Line-oriented scene grammar; '#' starts a comment.
///   point NAME = (expr, expr) | (expr : expr : expr)
///   line NAME = join(A, B) | [expr : expr : expr]
///   conic NAME = {expr, expr, expr, expr, expr, expr}
///   circle NAME = center(expr, expr) radius expr
///   target NAME
///   option KEY = VALUE
Scene parse_scene(std::string_view text, std::size_t max_degree = kDefaultMaxDegree);

/// Splits on `sep` at parenthesis depth zero.
std::vector<std::string> split_top_level(std::string_view text, char sep);
std::string trim(std::string_view s);

}  // namespace straightedge
