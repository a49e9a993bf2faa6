#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>

#include "emch/cli.hpp"
#include "emch/conic_bridge.hpp"
#include "emch/pencils.hpp"

namespace emch::cli {
namespace {

constexpr double kInfo = std::numeric_limits<double>::quiet_NaN();

CheckRow check(std::string name, double value, double tol, std::string note = {}) {
  return {std::move(name), value, tol, std::isfinite(value) && value <= tol, std::move(note)};
}

CheckRow info(std::string name, double value, std::string note = {}) {
  return {std::move(name), value, kInfo, true, std::move(note)};
}

SeriesRun series_of(const SceneFile& s, int circles) {
  const RestrictedDensity density(s.scene.density(), s.scene.delta, s.scene.tol.quad);
  return run_series(s.scene, first_series_step(s, density), s.direction, circles - 1);
}

std::vector<CheckRow> suite_measure(const SceneFile& s) {
  std::vector<CheckRow> rows;
  const SeriesRun run = series_of(s, 50);
  const auto& steps = run.series.steps;
  double spread = 0.0;
  for (const SeriesStep& st : steps) spread = std::max(spread, std::abs(st.mass - steps[0].mass) / steps[0].mass);
  if (is_nested(s.scene)) {
    rows.push_back(check("step mass spread", spread, 1e-8));
  } else {
    rows.push_back(info("step mass spread", spread, "not nested: arcs may reverse"));
  }
  rows.push_back(info("total mass", run.report.total));
  rows.push_back(info("step mass", steps[0].mass));
  if (run.report.closed) {
    rows.push_back(info("closed after", run.report.n));
    rows.push_back(info("winding", run.report.winding));
    rows.push_back(check("mass quantization", run.report.quantization, 1e-8));
  }

  const PairDensity d = s.scene.density();
  double worst_ratio = 0.0;
  double worst_residual = 0.0;
  bool all_halve = true;
  int used = 0;
  for (std::size_t k = 0; k < steps.size() && used < 5; ++k) {
    const InvarianceReport a = verify_invariance(d, s.scene.family(), s.scene.delta, steps[k].omega, 1e-4, s.scene.tol);
    const InvarianceReport b = verify_invariance(d, s.scene.family(), s.scene.delta, steps[k].omega, 5e-5, s.scene.tol);
    if (a.skipped || b.skipped) continue;
    ++used;
    const HalvingCheck h = halving_check(a.residual, b.residual);
    all_halve = all_halve && h.pass;
    worst_ratio = std::max(worst_ratio, h.ratio);
    worst_residual = std::max(worst_residual, a.residual);
  }
  rows.push_back(info("invariance residual at 1e-4", worst_residual));
  rows.push_back({"invariance residual halves", worst_ratio, kInfo, all_halve && used > 0,
                  all_halve && used > 0 ? "" : "residual does not halve"});

  const Scene& sc = s.scene;
  if (distance(sc.alpha0.center, sc.alpha1.center) <= sc.tol.geo) {
    const ZigzagConfig z(sc.alpha0, sc.alpha1);
    double worst = 0.0;
    int used_points = 0;
    for (Point p : sample_circle(sc.delta, 100)) {
      double b = 0.0;
      try {
        b = black_howland(z, p);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::DegenerateTriangle) throw;
        continue;  // outside the annulus
      }
      worst = std::max(worst, std::abs(b - 2 * rho(d, p)) / (2 * rho(d, p)));
      ++used_points;
    }
    if (used_points > 0) rows.push_back(check("zigzag density / 2 rho", worst, 1e-12));
  }
  return rows;
}

std::vector<CheckRow> suite_prop1(const SceneFile& s) {
  const Scene& sc = s.scene;
  const PairDensity d = sc.density();
  double worst = 0.0;
  int circles = 0;
  for (Point p : sample_circle(sc.delta, 60, 0.377)) {
    std::vector<TangentCircle> family;
    try {
      family = tangent_circles_through_point(sc.alpha0, sc.alpha1, p, sc.index, sc.tol.geo);
    } catch (const Error&) {
      continue;
    }
    for (const TangentCircle& w : family) {
      if (w.boundary) continue;
      worst = std::max(worst, verify_prop1(w, d, 64).max_deviation);
      ++circles;
    }
  }
  return {info("tangent circles", circles), check("rho h spread", circles ? worst : kInfo, 1e-9)};
}

std::vector<CheckRow> suite_signed(const SceneFile& s) {
  const SeriesRun run = series_of(s, 12);
  const SignedInvariantReport a = signed_invariant_check(run.series, 1e-4);
  const SignedInvariantReport b = signed_invariant_check(run.series, 5e-5);
  const HalvingCheck h = halving_check(a.spread, b.spread);
  std::vector<CheckRow> rows;
  rows.push_back(info("signed spread at 1e-4", a.spread));
  rows.push_back(info("signed spread at 5e-5", b.spread));
  rows.push_back({"signed spread halves", h.ratio, kInfo, h.pass, h.pass ? "" : "signed residual does not halve"});
  rows.push_back(info("untwisted spread", a.untwisted_spread));
  rows.push_back(info("direction changes", a.direction_changes ? 1 : 0));
  return rows;
}

std::vector<CheckRow> suite_pencil(const SceneFile& s) {
  if (!s.pencil) throw Error(ErrorCode::SchemaError, "suite pencil needs a pencil block");
  const Scene& sc = s.scene;
  const PairSequence ps{sc.delta, sc.alpha0, sc.alpha1, s.pencil->t0, s.pencil->t1};
  std::vector<CheckRow> rows;
  const Prop3Report p3 = verify_prop3(ps, 200);
  rows.push_back(check("density ratio spread", p3.spread, 1e-10));
  rows.push_back(check("density ratio prediction", p3.prediction_error, 1e-8));

  std::vector<std::pair<Circle, Circle>> pairs;
  for (std::size_t k = 0; k < ps.size(); ++k) pairs.push_back(ps.pair(k));
  std::vector<int> order(pairs.size());
  std::iota(order.begin(), order.end(), 0);
  int verdicts = 0;
  int closed = 0;
  const Point x1 = sc.delta.at(start_angle(s));
  do {
    const GeneralizedReport g = run_generalized_series(pairs, sc.delta, sc.index, x1, order, 40, sc.tol);
    ++verdicts;
    closed += g.closed ? 1 : 0;
  } while (pairs.size() <= 4 && std::next_permutation(order.begin(), order.end()));
  rows.push_back(info("orderings", verdicts));
  rows.push_back(info("orderings closed", closed));
  rows.push_back({"closure verdict agrees", 0.0, kInfo, closed == 0 || closed == verdicts,
                  closed == 0 || closed == verdicts ? "" : "verdict depends on the ordering"});
  return rows;
}

std::vector<CheckRow> suite_quadric(const SceneFile& s) {
  const Scene& sc = s.scene;
  if (!is_nested(sc)) {
    return {{"scene is nested", 0.0, kInfo, false, "the quadric bridge needs alpha0 inside delta inside alpha1"}};
  }
  const SeriesRun run = series_of(s, 30);
  const auto& st = run.series.steps;
  if (st.size() < 3) throw Error(ErrorCode::SeriesBlocked, "series too short for the quadric suite");
  const PonceletQuadric pq = derive_poncelet_quadric(sc.alpha0, sc.alpha1, sc.delta, Line::through(st[0].x, st[0].x_next),
                                                     Line::through(st[1].x, st[1].x_next));
  std::vector<CheckRow> rows;
  rows.push_back(info("A_p", pq.ap));
  const ConicKind kind = classify_conic(pq.gamma);
  rows.push_back(info("gamma kind", static_cast<double>(kind), to_string(kind)));
  if (kind == ConicKind::Circle) {
    const Quadric& g = pq.gamma;
    const Point c{-g.b1 / (2 * g.a11), -g.b2 / (2 * g.a11)};
    rows.push_back(info("gamma radius", std::sqrt(norm2(c) - g.c / g.a11)));
  }
  double worst = 0.0;
  for (const SeriesStep& k : st) {
    worst = std::max(worst, std::abs(line_tangency_residual(pq.gamma, Line::through(k.x, k.x_next))));
  }
  rows.push_back(check("chord tangency residual", worst, 1e-8));
  const auto [c1, c2] = series_chords(sc, start_angle(s) + 2.0);
  const PonceletQuadric other = derive_poncelet_quadric(sc.alpha0, sc.alpha1, sc.delta, c1, c2);
  rows.push_back(check("seed independence", quadric_distance_up_to_scale(pq.gamma, other.gamma), 1e-8));
  return rows;
}

std::vector<CheckRow> suite_cyclic(const SceneFile& s) {
  const Scene& sc = s.scene;
  const Cyclic f = Cyclic::product(sc.alpha0, sc.alpha1);
  const QuadricPencil pencil = equivalent_pencil(f, sc.delta);
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const double a = -25.0 + 50.0 * (k + 0.5) / 50.0;
    worst = std::max(worst, equivalence_spread(f, pencil.member(a), sc.delta, 64));
  }
  std::vector<CheckRow> rows;
  rows.push_back(check("equivalence spread", worst, 1e-10));
  rows.push_back(check("member at infinity is delta",
                       quadric_distance_up_to_scale(pencil.member(INFINITY), Quadric::from_circle(sc.delta)), 1e-15));

  const SeriesRun run = series_of(s, 8);
  double prop = 0.0;
  double line = 0.0;
  for (const SeriesStep& st : run.series.steps) {
    const TangentCircle& w = st.omega;
    prop = std::max(prop, verify_prop1_prime(f, w.circle, w.touch0, w.touch1, 64).max_deviation);
    line = std::max(line, double_line_member(f, w.circle, w.touch0, w.touch1).residual);
  }
  rows.push_back(check("F / h^2 spread", prop, 1e-9));
  rows.push_back(check("double line residual", line, 1e-10));
  return rows;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"measure", "prop1", "signed", "pencil", "quadric", "cyclic"};
  return names;
}

std::vector<CheckRow> run_suite(const std::string& suite, const SceneFile& s) {
  if (suite == "measure") return suite_measure(s);
  if (suite == "prop1") return suite_prop1(s);
  if (suite == "signed") return suite_signed(s);
  if (suite == "pencil") return suite_pencil(s);
  if (suite == "quadric") return suite_quadric(s);
  if (suite == "cyclic") return suite_cyclic(s);
  throw Error(ErrorCode::SchemaError, "unknown suite " + suite);
}

std::string format_table(const std::vector<CheckRow>& rows) {
  std::ostringstream o;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-32s %-24s %-10s %s\n", "check", "value", "tolerance", "result");
  o << buf;
  for (const CheckRow& r : rows) {
    char value[32];
    char tol[16];
    std::snprintf(value, sizeof value, "%.17g", r.value);
    if (std::isnan(r.tolerance)) {
      std::snprintf(tol, sizeof tol, "-");
    } else {
      std::snprintf(tol, sizeof tol, "%.1e", r.tolerance);
    }
    std::snprintf(buf, sizeof buf, "%-32s %-24s %-10s %s", r.name.c_str(), value, tol, r.pass ? "pass" : "FAIL");
    o << buf;
    if (!r.note.empty()) o << "  " << r.note;
    o << "\n";
  }
  return o.str();
}

}  // namespace emch::cli
