#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "straightedge/trace.hpp"

using namespace straightedge;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(CLI_BINARY) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string scene(const std::string& name) { return std::string(SOURCE_DIR) + "/scenes/" + name + ".scene"; }
std::string data(const std::string& name) { return std::string(SOURCE_DIR) + "/tests/data/" + name; }

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "straightedge_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("construct: circle centers from the common chord") {
  const auto trace_path = scratch("centers.trace");
  const auto svg_path = scratch("centers.svg");
  auto r = run("construct " + scene("intersecting_circles") + " centers-intersecting -o " + trace_path.string() +
               " --svg " + svg_path.string());
  CHECK(r.code == 0);
  CHECK(r.out.find("claim center1 = (0, 0)") != std::string::npos);
  CHECK(r.out.find("claim center2 = (1, 0)") != std::string::npos);

  const Trace t = Trace::parse(slurp(trace_path));
  CHECK(t.replay().ok);
  CHECK(object_text(t.claim("center1")) == "(0, 0)");
  CHECK(object_text(t.claim("center2")) == "(1, 0)");

  const std::string svg = slurp(svg_path);
  CHECK(count(svg, "class=\"move") == t.moves.size());
}

TEST_CASE("construct: parallel through a point") {
  auto r = run("construct " + scene("parallel") + " parallel-from-midpoint");
  CHECK(r.code == 0);
  CHECK(r.out.find("claim parallel = [0 : 1 : -2]") != std::string::npos);
}

TEST_CASE("construct: failures and usage") {
  auto broken = run("construct " + data("broken.scene") + " pascal");
  CHECK(broken.code == 2);
  CHECK(broken.out.find("line 3") != std::string::npos);

  CHECK(run("construct " + scene("parallel") + " no-such-construction").code == 2);
  CHECK(run("construct " + scene("parallel") + " parallel-from-midpoint --use A,B,M,B").code == 1);
  CHECK(run("").code == 2);
  CHECK(run("frobnicate").code == 2);
}

TEST_CASE("certify: shipped scenarios pass, a tampered file fails") {
  auto t2 = run("certify theorem2");
  CHECK(t2.code == 0);
  for (const char* cond : {"obstructions:", "targets excluded:", "initial objects:", "meets:", "curve cuts:", "density:"})
    CHECK(t2.out.find(cond) != std::string::npos);
  CHECK(run("certify midpoint").code == 0);

  auto bad = run("certify " + data("midpoint_tampered.json"));
  CHECK(bad.code == 1);
  CHECK(bad.out.find("targets excluded: FAIL") != std::string::npos);

  const auto written = scratch("erased.json");
  CHECK(run("certify erased --samples 50 --write " + written.string()).code == 0);
  CHECK(run("certify " + written.string() + " --samples 50").code == 0);
  CHECK(run("certify " + scene("parallel")).code == 2);
}

TEST_CASE("closure: reached, not reached, depth zero") {
  auto pos = run("closure " + scene("midpoint_parallel") + " --depth 3");
  CHECK(pos.code == 0);
  CHECK(pos.out.find("target M: reached at generation") != std::string::npos);

  auto neg = run("closure " + scene("midpoint_only") + " --depth 4 --adversary sigma:midpoint --seed 7");
  CHECK(neg.code == 0);
  CHECK(neg.out.find("target M: not reached by depth 4") != std::string::npos);
  CHECK(neg.out.find("all inside") != std::string::npos);

  auto zero = run("closure " + scene("midpoint_only") + " --depth 0");
  CHECK(zero.code == 0);
  CHECK(zero.out.find("generation 1") == std::string::npos);
  CHECK(zero.out.find("generation 0: points 2 (+0), lines 0 (+0)") != std::string::npos);

  CHECK(run("closure " + scene("midpoint_only") + " --adversary sigma:nowhere").code == 2);
}

TEST_CASE("field: evaluation, membership and the degree cap") {
  auto r = run("field 'sqrt(2)*sqrt(8)'");
  CHECK(r.code == 0);
  CHECK(r.out.find("value: 4\n") != std::string::npos);
  CHECK(r.out.find("rational: yes") != std::string::npos);

  CHECK(run("field 'sqrt(2)+sqrt(3)' --equals 'sqrt(5+2*sqrt(6))' --in 2 --in 3").code == 0);
  CHECK(run("field 'sqrt(5)' --in 2").code == 1);
  CHECK(run("field 'sqrt(2)+sqrt(3)+sqrt(5)' --max-degree 4").code == 3);
  CHECK(run("field '1+'").code == 2);
}

TEST_CASE("transcripts are byte-identical across runs") {
  for (const std::string args :
       {"closure " + scene("midpoint_only") + " --depth 3 --adversary sigma:midpoint --seed 5",
        "closure " + scene("midpoint_parallel") + " --depth 2 --seed 9", std::string("certify hilbert --samples 100"),
        "construct " + scene("concentric") + " center-concentric"}) {
    CAPTURE(args);
    const auto a = run(args);
    const auto b = run(args);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
  }
}
