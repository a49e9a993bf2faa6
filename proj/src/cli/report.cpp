#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "emch/cli.hpp"

namespace emch::cli {
namespace {

const char* stop_name(StopReason r) {
  switch (r) {
    case StopReason::Closed: return "closed";
    case StopReason::Blocked: return "blocked";
    case StopReason::MaxSteps: break;
  }
  return "max_steps";
}

// Infinite or NaN values become null.
json finite(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json provenance(const SceneFile& s) {
  return {{"version", version()},
          {"scene_hash", scene_hash(s)},
          {"tolerances", {{"geo", s.scene.tol.geo}, {"quad", s.scene.tol.quad}, {"close", s.scene.tol.close}}}};
}

}  // namespace

RunOutcome run_report(const SceneFile& s, int steps) {
  RunOutcome out;
  json& r = out.report;
  r["provenance"] = provenance(s);
  r["scene"] = scene_to_json(s);

  CircularSeries series{s.scene, s.direction, {}};
  ClosureReport closure;
  if (steps > 0) {
    const RestrictedDensity density(s.scene.density(), s.scene.delta, s.scene.tol.quad);
    SeriesRun run = run_series(s.scene, first_series_step(s, density), s.direction, steps - 1);
    series = std::move(run.series);
    closure = std::move(run.report);
  }
  out.blocked = closure.stop == StopReason::Blocked;

  json list = json::array();
  double mass_spread = 0.0;
  for (const SeriesStep& st : series.steps) {
    list.push_back({{"omega", circle_json(st.omega.circle)},
                    {"x", point_json(st.x)},
                    {"x_next", point_json(st.x_next)},
                    {"t0", point_json(st.omega.touch0)},
                    {"t1", point_json(st.omega.touch1)},
                    {"sign", st.sign},
                    {"mass", st.mass}});
    const double m0 = series.steps.front().mass;
    mass_spread = std::max(mass_spread, std::abs(st.mass - m0) / m0);
  }
  r["series"] = {{"direction", s.direction == Direction::Ccw ? "ccw" : "cw"}, {"steps", list}};
  r["closure"] = {{"closed", closure.closed},
                  {"n", closure.n},
                  {"winding", closure.winding},
                  {"residual", finite(closure.residual)},
                  {"mass_sum", closure.mass_sum},
                  {"total", closure.total},
                  {"quantization", closure.quantization},
                  {"stop", stop_name(closure.stop)},
                  {"message", closure.message}};
  r["invariants"] = {{"step_mass_spread", mass_spread}};
  return out;
}

namespace {

struct View {
  double x0, y0, size;
  double sx(double x) const { return x - x0; }
  double sy(double y) const { return y0 - y; }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

Point as_point(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

Circle as_circle(const json& j) { return Circle(as_point(j.at("center")), j.at("radius").get<double>()); }

void circle_svg(std::ostringstream& o, const View& v, const Circle& c, const char* stroke, double width,
                const char* extra = "") {
  o << "  <circle cx=\"" << num(v.sx(c.center.x)) << "\" cy=\"" << num(v.sy(c.center.y)) << "\" r=\""
    << num(c.radius) << "\" fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"" << num(width) << "\"" << extra
    << "/>\n";
}

}  // namespace

std::string render_svg(const json& report) {
  const json& scene = report.at("scene");
  const Circle a0 = as_circle(scene.at("alpha0"));
  const Circle a1 = as_circle(scene.at("alpha1"));
  const Circle delta = as_circle(scene.at("delta"));
  std::vector<Circle> omegas;
  for (const json& st : report.at("series").at("steps")) omegas.push_back(as_circle(st.at("omega")));

  double lo_x = std::numeric_limits<double>::infinity(), lo_y = lo_x, hi_x = -lo_x, hi_y = -lo_x;
  auto grow = [&](const Circle& c) {
    lo_x = std::min(lo_x, c.center.x - c.radius);
    hi_x = std::max(hi_x, c.center.x + c.radius);
    lo_y = std::min(lo_y, c.center.y - c.radius);
    hi_y = std::max(hi_y, c.center.y + c.radius);
  };
  for (const Circle& c : {a0, a1, delta}) grow(c);
  for (const Circle& c : omegas) grow(c);
  const double pad = 0.05 * std::max(hi_x - lo_x, hi_y - lo_y);
  const View v{lo_x - pad, hi_y + pad, std::max(hi_x - lo_x, hi_y - lo_y) + 2 * pad};
  const double w = v.size / 400.0;

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << num(hi_x - lo_x + 2 * pad) << " "
    << num(hi_y - lo_y + 2 * pad) << "\" width=\"800\" height=\""
    << num(800.0 * (hi_y - lo_y + 2 * pad) / (hi_x - lo_x + 2 * pad)) << "\">\n";
  o << "  <rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  circle_svg(o, v, a0, "black", 2 * w);
  circle_svg(o, v, a1, "black", 2 * w);
  circle_svg(o, v, delta, "#1f5fbf", 2 * w);
  for (const Circle& c : omegas) circle_svg(o, v, c, "#999999", w);
  for (const json& st : report.at("series").at("steps")) {
    const Point x = as_point(st.at("x"));
    const Point y = as_point(st.at("x_next"));
    o << "  <line x1=\"" << num(v.sx(x.x)) << "\" y1=\"" << num(v.sy(x.y)) << "\" x2=\"" << num(v.sx(y.x))
      << "\" y2=\"" << num(v.sy(y.y)) << "\" stroke=\"#c03030\" stroke-width=\"" << num(w) << "\"/>\n";
    for (const char* key : {"t0", "t1"}) {
      const Point t = as_point(st.at(key));
      o << "  <circle cx=\"" << num(v.sx(t.x)) << "\" cy=\"" << num(v.sy(t.y)) << "\" r=\"" << num(2.5 * w)
        << "\" fill=\"#2a8a2a\"/>\n";
    }
    o << "  <circle cx=\"" << num(v.sx(x.x)) << "\" cy=\"" << num(v.sy(x.y)) << "\" r=\"" << num(3 * w)
      << "\" fill=\"#c03030\"/>\n";
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace emch::cli
