#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "emch/cli.hpp"

using namespace emch;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  args.insert(args.begin(), "emch");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string scene(const std::string& name) { return std::string(EMCH_SCENES_DIR) + "/" + name; }

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "emch_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string write_scene(const std::string& name, const std::string& text) {
  const fs::path p = scratch(name);
  std::ofstream(p) << text;
  return p.string();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

const char* kAnnulus = R"({"alpha0": {"center": [0, 0], "radius": 1},
  "alpha1": {"center": [0, 0], "radius": 3}, "delta": {"center": [0, 0], "radius": 2})";

}  // namespace

TEST_CASE("run writes a closing report") {
  const Result r = call({"run", scene("annulus_hexagon.json"), "--steps", "20"});
  REQUIRE(r.code == 0);
  const auto j = cli::json::parse(r.out);
  CHECK(j["closure"]["closed"] == true);
  CHECK(j["closure"]["n"] == 6);
  CHECK(j["closure"]["winding"] == 1);
  CHECK(j["provenance"]["version"] == cli::version());
  CHECK(j["provenance"]["scene_hash"].get<std::string>().size() == 16);
  // Reports reload to the same bytes.
  CHECK(cli::dump(cli::json::parse(r.out)) == r.out);
}

TEST_CASE("run with zero steps") {
  const Result r = call({"run", scene("annulus_hexagon.json"), "--steps", "0"});
  REQUIRE(r.code == 0);
  CHECK(cli::json::parse(r.out)["series"]["steps"].empty());
}

TEST_CASE("schema errors exit with 1") {
  CHECK(call({"run", write_scene("bad1.json", std::string(kAnnulus) +
                                                  R"(, "start": {"circle": {"center": [2.1, 0], "radius": 1}}})")})
            .code == 1);
  CHECK(call({"run", write_scene("bad2.json", std::string(kAnnulus) + R"(, "index": 2})")}).code == 1);
  CHECK(call({"run", write_scene("bad3.json", std::string(kAnnulus) + R"(, "colour": 2})")}).code == 1);
  CHECK(call({"run", write_scene("bad4.json", std::string(kAnnulus) + R"(, "tolerances": {"geo": -1}})")}).code == 1);
  CHECK(call({"run", write_scene("bad5.json", std::string(kAnnulus) + R"(, "start": {"point": [2.5, 0]}})")}).code == 1);
  CHECK(call({"run", scratch("missing.json").string()}).code == 1);
  CHECK(call({"verify", scene("nested.json"), "--suite", "nope"}).code == 1);
  CHECK(call({"verify", scene("annulus_quadric.json"), "--suite", "pencil"}).code == 1);
  CHECK(call({"frobnicate"}).code == 1);
}

TEST_CASE("blocked series exits with 2 and keeps the report") {
  const std::string path = write_scene("blocked.json", R"({"alpha0": {"center": [0, 0], "radius": 1},
    "alpha1": {"center": [0, 0], "radius": 3}, "delta": {"center": [2, 2], "radius": 1},
    "start": {"circle": {"center": [2, 0], "radius": 1}}})");
  const fs::path out = scratch("blocked_report.json");
  fs::remove(out);
  const Result r = call({"run", path, "--out", out.string()});
  CHECK(r.code == 2);
  REQUIRE(fs::exists(out));
  CHECK(cli::json::parse(slurp(out))["closure"]["stop"] == "blocked");
}

TEST_CASE("verify suites") {
  const Result q = call({"verify", scene("annulus_quadric.json"), "--suite", "quadric"});
  CHECK(q.code == 0);
  CHECK(q.out.find("A_p                              10 ") != std::string::npos);
  CHECK(q.out.find("gamma radius                     1.75 ") != std::string::npos);
  for (const char* suite : {"measure", "prop1", "signed", "pencil", "quadric", "cyclic"}) {
    CAPTURE(suite);
    CHECK(call({"verify", scene("nested.json"), "--suite", suite}).code == 0);
  }
  const Result s = call({"verify", scene("crossing.json"), "--suite", "signed"});
  CHECK(s.code == 0);
  CHECK(s.out.find("direction changes                1 ") != std::string::npos);
}

TEST_CASE("a failing check exits with 3") {
  const Result r = call({"verify", scene("crossing.json"), "--suite", "quadric"});
  CHECK(r.code == 3);
  CHECK(r.out.find("FAIL") != std::string::npos);
}

TEST_CASE("scan finds the hexagon radius") {
  const Result r = call({"scan", scene("annulus_hexagon.json"), "--vary", "delta.radius", "--from", "1.1", "--to",
                         "2.9", "--samples", "19", "--target-n", "6"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  int targets = 0;
  while (std::getline(in, line)) {
    if (line.rfind("target,", 0) != 0) continue;
    ++targets;
    const double p = std::stod(line.substr(7));
    CHECK(std::abs(p - std::sqrt(3.0)) <= 1e-9);
    CHECK(line.find(",true,6,1,") != std::string::npos);
  }
  CHECK(targets == 1);

  const Result empty = call({"scan", scene("annulus_hexagon.json"), "--from", "2", "--to", "1", "--samples", "5"});
  CHECK(empty.code == 0);
  CHECK(empty.out == "kind,parameter,rotation,closed,n,winding,status\n");
  CHECK(call({"scan", scene("annulus_hexagon.json"), "--vary", "delta.colour", "--from", "1", "--to", "2",
              "--samples", "3"})
            .code == 1);
}

TEST_CASE("scan marks scenes that are not nested") {
  const Result r = call({"scan", scene("annulus_hexagon.json"), "--from", "0.5", "--to", "2.0", "--samples", "4"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("not_nested") != std::string::npos);
}

TEST_CASE("repeated runs are byte-identical") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"run", scene("nested.json"), "--steps", "30"},
           {"verify", scene("nested.json"), "--suite", "measure"},
           {"scan", scene("annulus_hexagon.json"), "--from", "1.2", "--to", "2.8", "--samples", "9", "--target-n", "7"}}) {
    CHECK(call(args).out == call(args).out);
  }
}

TEST_CASE("validate normalizes and round-trips") {
  const Result a = call({"validate", scene("nested.json")});
  REQUIRE(a.code == 0);
  const std::string again = write_scene("normalized.json", a.out);
  CHECK(call({"validate", again}).out == a.out);
  const auto j = cli::json::parse(a.out);
  CHECK(j["direction"] == "ccw");
  CHECK(j["tolerances"]["quad"] == 1e-10);
}

TEST_CASE("tolerance profiles") {
  CHECK(cli::tolerance_profile("strict").quad == 1e-12);
  CHECK_THROWS_AS(cli::tolerance_profile("sloppy"), Error);
}

TEST_CASE("render draws the report") {
  const fs::path report = scratch("hexagon.json");
  const fs::path svg = scratch("hexagon.svg");
  REQUIRE(call({"run", scene("annulus_hexagon.json"), "--out", report.string(), "--svg", svg.string()}).code == 0);
  const Result r = call({"render", report.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out == slurp(svg));
  CHECK(r.out.rfind("<svg", 0) == 0);
}
