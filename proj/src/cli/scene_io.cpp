#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "emch/cli.hpp"
#include "emch/pencils.hpp"

#ifndef EMCH_VERSION
#define EMCH_VERSION "0.0.0"
#endif

namespace emch::cli {
namespace {

[[noreturn]] void schema(const std::string& msg) { throw Error(ErrorCode::SchemaError, msg); }

void only_keys(const json& j, const std::string& where, std::set<std::string> allowed) {
  if (!j.is_object()) schema(where + " must be an object");
  for (const auto& [key, _] : j.items()) {
    if (!allowed.count(key)) schema("unknown key " + where + "." + key);
  }
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) schema(where + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) schema(where + " must be finite");
  return v;
}

Point point(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) schema(where + " must be [x, y]");
  return {number(j[0], where + "[0]"), number(j[1], where + "[1]")};
}

Circle circle(const json& j, const std::string& where) {
  only_keys(j, where, {"center", "radius"});
  if (!j.contains("center") || !j.contains("radius")) schema(where + " needs center and radius");
  const double r = number(j["radius"], where + ".radius");
  if (!(r > 0)) schema(where + ".radius must be positive");
  return Circle(point(j["center"], where + ".center"), r);
}

std::vector<double> numbers(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) schema(where + " must be a non-empty array");
  std::vector<double> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(number(j[k], where + "[" + std::to_string(k) + "]"));
  return out;
}

}  // namespace

Tolerances tolerance_profile(std::string_view name) {
  if (name == "default") return {1e-9, 1e-10, 1e-8};
  if (name == "strict") return {1e-11, 1e-12, 1e-10};
  if (name == "loose") return {1e-7, 1e-8, 1e-6};
  schema("unknown tolerance profile " + std::string(name));
}

Tolerances default_tolerances() {
  const char* env = std::getenv("EMCH_TOLERANCE_PROFILE");
  return tolerance_profile(env && *env ? env : "default");
}

SceneFile parse_scene(const json& j, const Tolerances& defaults) {
  only_keys(j, "scene", {"alpha0", "alpha1", "delta", "index", "start", "direction", "pencil", "tolerances"});
  for (const char* key : {"alpha0", "alpha1", "delta"}) {
    if (!j.contains(key)) schema(std::string("missing ") + key);
  }
  SceneFile s;
  s.scene.alpha0 = circle(j["alpha0"], "alpha0");
  s.scene.alpha1 = circle(j["alpha1"], "alpha1");
  s.scene.delta = circle(j["delta"], "delta");
  if (j.contains("index")) {
    if (!j["index"].is_number_integer()) schema("index must be 0 or 1");
    const int i = j["index"].get<int>();
    if (i != 0 && i != 1) schema("index must be 0 or 1");
    s.scene.index = TangencyIndex(i);
  } else {
    s.scene.index = TangencyIndex(1);
  }
  if (j.contains("direction")) {
    const json& d = j["direction"];
    if (d == "ccw") {
      s.direction = Direction::Ccw;
    } else if (d == "cw") {
      s.direction = Direction::Cw;
    } else {
      schema("direction must be \"ccw\" or \"cw\"");
    }
  }
  if (j.contains("start")) {
    const json& st = j["start"];
    only_keys(st, "start", {"angle", "point", "circle"});
    if (st.size() != 1) schema("start needs exactly one of angle, point, circle");
    if (st.contains("angle")) {
      s.start.kind = StartSpec::Kind::Angle;
      s.start.angle = number(st["angle"], "start.angle");
    } else if (st.contains("point")) {
      s.start.kind = StartSpec::Kind::Point;
      s.start.point = point(st["point"], "start.point");
    } else {
      s.start.kind = StartSpec::Kind::Circle;
      s.start.circle = circle(st["circle"], "start.circle");
    }
  }
  if (j.contains("pencil")) {
    const json& p = j["pencil"];
    only_keys(p, "pencil", {"t0", "t1"});
    if (!p.contains("t0") || !p.contains("t1")) schema("pencil needs t0 and t1");
    PencilSpec ps{numbers(p["t0"], "pencil.t0"), numbers(p["t1"], "pencil.t1")};
    if (ps.t0.size() != ps.t1.size()) schema("pencil.t0 and pencil.t1 differ in length");
    s.pencil = ps;
  }
  s.scene.tol = defaults;
  if (j.contains("tolerances")) {
    const json& t = j["tolerances"];
    only_keys(t, "tolerances", {"geo", "quad", "close"});
    if (t.contains("geo")) s.scene.tol.geo = number(t["geo"], "tolerances.geo");
    if (t.contains("quad")) s.scene.tol.quad = number(t["quad"], "tolerances.quad");
    if (t.contains("close")) s.scene.tol.close = number(t["close"], "tolerances.close");
  }
  const Tolerances& tol = s.scene.tol;
  if (!(tol.geo > 0 && tol.quad > 0 && tol.close > 0)) schema("tolerances must be positive");
  return s;
}

SceneFile load_scene(const std::string& path, const Tolerances& defaults) {
  std::ifstream in(path);
  if (!in) schema("cannot read " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    schema(path + ": " + e.what());
  }
  return parse_scene(j, defaults);
}

json point_json(Point p) { return json::array({p.x, p.y}); }

json circle_json(const Circle& c) { return {{"center", point_json(c.center)}, {"radius", c.radius}}; }

json scene_to_json(const SceneFile& s) {
  json j;
  j["alpha0"] = circle_json(s.scene.alpha0);
  j["alpha1"] = circle_json(s.scene.alpha1);
  j["delta"] = circle_json(s.scene.delta);
  j["index"] = s.scene.index.value();
  j["direction"] = s.direction == Direction::Ccw ? "ccw" : "cw";
  switch (s.start.kind) {
    case StartSpec::Kind::Angle: j["start"] = {{"angle", s.start.angle}}; break;
    case StartSpec::Kind::Point: j["start"] = {{"point", point_json(s.start.point)}}; break;
    case StartSpec::Kind::Circle: j["start"] = {{"circle", circle_json(s.start.circle)}}; break;
  }
  if (s.pencil) j["pencil"] = {{"t0", s.pencil->t0}, {"t1", s.pencil->t1}};
  j["tolerances"] = {{"geo", s.scene.tol.geo}, {"quad", s.scene.tol.quad}, {"close", s.scene.tol.close}};
  return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string scene_hash(const SceneFile& s) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(scene_to_json(s).dump())));
  return buf;
}

std::string version() { return EMCH_VERSION; }

double start_angle(const SceneFile& s) {
  const Circle& delta = s.scene.delta;
  switch (s.start.kind) {
    case StartSpec::Kind::Angle: return s.start.angle;
    case StartSpec::Kind::Point: return delta.angle_of(s.start.point);
    case StartSpec::Kind::Circle: break;
  }
  const auto cut = circle_circle_intersection(s.start.circle, delta, s.scene.tol.geo);
  if (cut.empty()) schema("start.circle does not meet delta");
  return delta.angle_of(cut.front());
}

SeriesStep first_series_step(const SceneFile& s, const RestrictedDensity& density) {
  if (s.start.kind == StartSpec::Kind::Circle) return first_step(s.scene, s.start.circle, s.direction, density);
  Point x = s.scene.delta.at(s.start.angle);
  if (s.start.kind == StartSpec::Kind::Point) x = s.start.point;
  return first_step(s.scene, x, s.direction, density);
}

void validate(const SceneFile& s) {
  const Scene& sc = s.scene;
  if (circle_distance(sc.alpha0, sc.alpha1) <= sc.tol.geo) schema("alpha0 and alpha1 coincide");
  const double scale = std::max({1.0, sc.delta.radius, std::abs(sc.delta.center.x), std::abs(sc.delta.center.y)});
  if (s.start.kind == StartSpec::Kind::Point &&
      std::abs(distance(s.start.point, sc.delta.center) - sc.delta.radius) > sc.tol.geo * scale) {
    schema("start.point is not on delta");
  }
  if (s.start.kind == StartSpec::Kind::Circle) {
    try {
      if (classify_index(s.start.circle, sc.alpha0, sc.alpha1, sc.tol.geo * scale) != sc.index) {
        schema("start.circle has the wrong tangency index");
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::SchemaError) throw;
      schema(std::string("start.circle: ") + e.what());
    }
    if (circle_circle_intersection(s.start.circle, sc.delta, sc.tol.geo).empty()) {
      schema("start.circle does not meet delta");
    }
  }
  if (s.pencil) {
    const PairSequence ps{sc.delta, sc.alpha0, sc.alpha1, s.pencil->t0, s.pencil->t1};
    for (std::size_t k = 0; k < ps.size(); ++k) {
      try {
        ps.pair(k);
      } catch (const Error& e) {
        schema("pencil pair " + std::to_string(k) + ": " + e.what());
      }
    }
  }
}

}  // namespace emch::cli
