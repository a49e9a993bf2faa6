#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>

#include <boost/math/tools/roots.hpp>

#include "emch/cli.hpp"

namespace emch::cli {
namespace {

double& field(SceneFile& s, const std::string& path) {
  Scene& sc = s.scene;
  const auto dot = path.find('.');
  if (dot == std::string::npos) throw Error(ErrorCode::SchemaError, "unknown parameter " + path);
  const std::string head = path.substr(0, dot);
  const std::string tail = path.substr(dot + 1);
  Circle* c = nullptr;
  if (head == "alpha0") c = &sc.alpha0;
  if (head == "alpha1") c = &sc.alpha1;
  if (head == "delta") c = &sc.delta;
  if (c) {
    if (tail == "radius") return c->radius;
    if (tail == "center.x") return c->center.x;
    if (tail == "center.y") return c->center.y;
  }
  throw Error(ErrorCode::SchemaError, "unknown parameter " + path);
}

struct Sample {
  bool ok = false;
  double rotation = 0.0;
  std::string status;
};

// Rotation number at one parameter value; the start keeps its angle on delta.
Sample rotation_at(const SceneFile& base, const std::string& vary, double p, double angle) {
  SceneFile s = base;
  set_parameter(s, vary, p);
  Sample out;
  try {
    out.rotation = rotation_number(s.scene, s.scene.delta.at(angle), 1).value;
    out.ok = true;
    out.status = "ok";
  } catch (const Error& e) {
    out.status = e.code() == ErrorCode::NotNested ? "not_nested" : std::string(to_string(e.code()));
  }
  return out;
}

ScanRow closure_row(const SceneFile& base, const ScanOptions& opt, double p, double angle, const char* kind,
                    int steps) {
  ScanRow row;
  row.kind = kind;
  row.parameter = p;
  const Sample smp = rotation_at(base, opt.vary, p, angle);
  row.rotation = smp.rotation;
  row.status = smp.status;
  if (!smp.ok) return row;
  SceneFile s = base;
  set_parameter(s, opt.vary, p);
  try {
    const SeriesRun run = run_series(s.scene, s.scene.delta.at(angle), Direction::Ccw, steps);
    row.closed = run.report.closed;
    row.n = run.report.closed ? run.report.n : 0;
    row.winding = run.report.closed ? run.report.winding : 0;
  } catch (const Error& e) {
    row.status = std::string(to_string(e.code()));
  }
  return row;
}

template <class F>
void parallel_for(int count, int threads, F&& body) {
  const int workers = std::max(1, std::min(count, threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency())));
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int k = next++; k < count; k = next++) body(k);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

void set_parameter(SceneFile& s, const std::string& path, double value) {
  field(s, path) = value;
  if (path.ends_with("radius") && !(value > 0)) throw Error(ErrorCode::SchemaError, "radius must be positive");
}

std::vector<ScanRow> scan(const SceneFile& s, const ScanOptions& opt) {
  {
    SceneFile probe = s;
    field(probe, opt.vary);
  }
  std::vector<ScanRow> rows;
  if (opt.samples <= 0 || !(opt.from < opt.to)) return rows;
  const double angle = start_angle(s);
  const int k = opt.samples;
  std::vector<double> params(k);
  for (int i = 0; i < k; ++i) params[i] = k == 1 ? opt.from : opt.from + (opt.to - opt.from) * i / (k - 1);

  rows.resize(k);
  parallel_for(k, opt.threads, [&](int i) { rows[i] = closure_row(s, opt, params[i], angle, "sample", opt.steps); });
  if (!opt.target_n) return rows;

  const double target = 1.0 / *opt.target_n;
  auto g = [&](double p) {
    const Sample smp = rotation_at(s, opt.vary, p, angle);
    return smp.ok ? smp.rotation - target : std::nan("");
  };
  std::vector<double> roots;
  boost::math::tools::eps_tolerance<double> tol(50);
  for (int i = 0; i + 1 < k; ++i) {
    if (rows[i].status != "ok" || rows[i + 1].status != "ok") continue;
    const double ga = rows[i].rotation - target;
    const double gb = rows[i + 1].rotation - target;
    if (ga == 0.0) roots.push_back(params[i]);
    if (ga * gb < 0) {
      std::uintmax_t iters = 200;
      const auto [lo, hi] = boost::math::tools::toms748_solve(g, params[i], params[i + 1], ga, gb, tol, iters);
      roots.push_back(0.5 * (lo + hi));
    }
  }
  // A target touched at an extremum of the rotation number gives a double root
  // with no sign change; locate the extremum through the slope.
  const double h = 1e-6 * std::max(1.0, std::abs(opt.to - opt.from));
  auto slope = [&](double p) { return (g(p + h) - g(p - h)) / (2 * h); };
  for (int i = 1; i + 1 < k; ++i) {
    if (rows[i - 1].status != "ok" || rows[i].status != "ok" || rows[i + 1].status != "ok") continue;
    const double d0 = rows[i].rotation - rows[i - 1].rotation;
    const double d1 = rows[i + 1].rotation - rows[i].rotation;
    if (d0 * d1 >= 0) continue;
    double a = params[i - 1] + h, b = params[i + 1] - h;
    double sa = slope(a), sb = slope(b);
    if (!(sa * sb < 0)) continue;
    std::uintmax_t iters = 200;
    const auto [lo, hi] = boost::math::tools::toms748_solve(slope, a, b, sa, sb, tol, iters);
    const double p = 0.5 * (lo + hi);
    const double gp = g(p);
    if (std::abs(gp) > 1e-10) continue;
    const bool known = std::any_of(roots.begin(), roots.end(), [&](double r) { return std::abs(r - p) <= 1e3 * h; });
    if (!known) roots.push_back(p);
  }
  std::sort(roots.begin(), roots.end());
  std::vector<ScanRow> found(roots.size());
  parallel_for(static_cast<int>(roots.size()), opt.threads, [&](int i) {
    found[i] = closure_row(s, opt, roots[i], angle, "target", 4 * *opt.target_n);
  });
  rows.insert(rows.end(), found.begin(), found.end());
  return rows;
}

std::string format_csv(const std::vector<ScanRow>& rows) {
  std::ostringstream o;
  o << "kind,parameter,rotation,closed,n,winding,status\n";
  char buf[64];
  for (const ScanRow& r : rows) {
    o << r.kind << ",";
    std::snprintf(buf, sizeof buf, "%.17g", r.parameter);
    o << buf << ",";
    std::snprintf(buf, sizeof buf, "%.17g", r.rotation);
    o << buf << "," << (r.closed ? "true" : "false") << "," << r.n << "," << r.winding << "," << r.status << "\n";
  }
  return o.str();
}

}  // namespace emch::cli
