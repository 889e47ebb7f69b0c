#pragma once

#include <map>
#include <string>
#include <vector>

#include "straightedge/scene.hpp"

namespace straightedge {

enum class Selector { First, Second, Tangent };

const char* selector_name(Selector s);

struct Move {
  enum class Kind { DrawLine, MarkMeet, MarkOnCurve, Adversary };

  Kind kind = Kind::DrawLine;
  std::string id;
  std::string a;  // point, line or line id
  std::string b;  // point, line or curve id
  Selector selector = Selector::First;
  std::string region;  // adversary only: "at(x, y)"

  std::string to_text() const;
};

struct Claim {
  std::string name;
  std::string id;
};

/// Straightedge construction record: a scene, the moves applied to it and
/// named outputs. Every binding is the exact object the move produced.
class Trace {
 public:
  Scene scene;
  std::vector<Move> moves;
  std::map<std::string, Object> bindings;
  std::vector<Claim> claims;

  const Object& at(const std::string& id) const;
  const Object& claim(const std::string& name) const;

  struct ReplayResult {
    bool ok = true;
    std::string detail;
  };
  /// Re-executes every move from the scene and compares each result exactly.
  ReplayResult replay(std::size_t max_degree = kDefaultMaxDegree) const;

  std::string to_text() const;
  static Trace parse(std::string_view text, std::size_t max_degree = kDefaultMaxDegree);
};

/// Executes a single move against the objects known so far.
Object execute_move(const Move& m, const std::map<std::string, Object>& known, std::size_t max_degree);

/// Incremental trace recorder used by the constructions.
class TraceBuilder {
 public:
  explicit TraceBuilder(std::size_t max_degree = kDefaultMaxDegree) : max_degree_(max_degree) {}

  std::string add_point(const std::string& name, const ProjPoint& p);
  std::string add_line(const std::string& name, const ProjLine& l);
  std::string add_curve(const std::string& name, const Conic& c);

  std::string line(const std::string& p, const std::string& q);
  std::string meet(const std::string& l, const std::string& m);
  std::string on(const std::string& l, const std::string& curve, Selector sel);
  /// Second point of l on the curve, other than the known point p (p itself if l is tangent).
  std::string other_on(const std::string& l, const std::string& curve, const std::string& p);
  std::string adversary(const ProjPoint& p);
  void claim(const std::string& name, const std::string& id);

  const ProjPoint& point(const std::string& id) const;
  const ProjLine& line_of(const std::string& id) const;
  const Conic& curve(const std::string& id) const;

  /// Number of recorded moves; pass to rollback() to discard a failed attempt.
  std::size_t checkpoint() const { return trace_.moves.size(); }
  void rollback(std::size_t mark);

  std::size_t max_degree() const { return max_degree_; }
  const Trace& trace() const { return trace_; }
  Trace take() { return std::move(trace_); }

 private:
  std::string fresh(char prefix);
  std::string record(Move m);

  Trace trace_;
  std::size_t counter_ = 0;
  std::size_t max_degree_;
};

struct SvgOptions {
  double width = 640;
  double height = 640;
};

/// Presentation-only rendering: every scene object and one element per move.
std::string render_svg(const Trace& t, const SvgOptions& opts = {});

}  // namespace straightedge
