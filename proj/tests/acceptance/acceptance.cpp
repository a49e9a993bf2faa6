// Acceptance suite: one line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "emch/cli.hpp"
#include "emch/conic_bridge.hpp"
#include "emch/pencils.hpp"

using namespace emch;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Scene random_nested(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double big_r = 1.5 + 1.5 * u(rng);
  const Point cd{u(rng) - 0.5, u(rng) - 0.5};
  const double r0 = big_r * (0.15 + 0.5 * u(rng));
  const double off0 = 0.8 * (big_r - r0) * u(rng);
  const double r1 = big_r * (1.2 + 1.5 * u(rng));
  const double off1 = 0.8 * (r1 - big_r) * u(rng);
  const Circle a0(cd + off0 * unit_vector(2 * kPi * u(rng)), r0);
  const Circle a1(cd + off1 * unit_vector(2 * kPi * u(rng)), r1);
  return {a0, a1, Circle(cd, big_r), TangencyIndex(1), {1e-9, 1e-10, 1e-8}};
}

double mass_spread(const CircularSeries& series) {
  double s = 0.0;
  for (const SeriesStep& st : series.steps) {
    s = std::max(s, std::abs(st.mass - series.steps[0].mass) / series.steps[0].mass);
  }
  return s;
}

// 1. Step masses are constant along random nested series.
Outcome invariance() {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> ang(0.0, 2 * kPi);
  double worst = 0.0;
  int scenes = 0;
  const auto t0 = std::chrono::steady_clock::now();
  for (int k = 0; k < 100; ++k) {
    const Scene s = random_nested(rng);
    const SeriesRun run = run_series(s, s.delta.at(ang(rng)), Direction::Ccw, 49);
    if (run.report.stop == StopReason::Blocked) return {false, "series blocked in scene " + std::to_string(k)};
    if (!run.report.closed && run.series.steps.size() != 50) return {false, "short series"};
    worst = std::max(worst, mass_spread(run.series));
    ++scenes;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {worst <= 1e-8, std::to_string(scenes) + " scenes x 50 steps, max spread " + fmt("%.2e", worst) +
                             " (tol 1e-8), " + fmt("%.2f", secs) + " s"};
}

struct ClosingScene {
  std::string name;
  Scene scene;
  int n;
};

cli::SceneFile scene_file(const Scene& s) {
  cli::SceneFile f;
  f.scene = s;
  f.start.angle = 0.3;
  return f;
}

// Closing scenes found by scanning delta's radius for rotation number 1/n.
std::vector<ClosingScene> scanned_scenes(std::string& log) {
  struct Job {
    std::string name;
    Scene base;
    double from, to;
    int n;
  };
  const Tolerances tol{1e-9, 1e-10, 1e-8};
  const Scene wide{Circle({0, 0}, 1), Circle({0, 0}, 20), Circle({0, 0}, 2), TangencyIndex(1), tol};
  const Scene annulus{Circle({0, 0}, 1), Circle({0, 0}, 3), Circle({0, 0}, 2), TangencyIndex(1), tol};
  const Scene skew_wide{Circle({0.3, 0.1}, 1), Circle({-0.2, 0.05}, 20), Circle({0.05, -0.1}, 2), TangencyIndex(1), tol};
  const Scene skew{Circle({0.2, 0.1}, 1), Circle({-0.1, 0.05}, 3.6), Circle({0.05, -0.1}, 2), TangencyIndex(1), tol};
  const std::vector<Job> jobs{
      {"wide annulus", wide, 1.05, 19.5, 3},  {"wide annulus", wide, 1.05, 19.5, 4},
      {"wide annulus", wide, 1.05, 19.5, 5},  {"annulus", annulus, 1.1, 2.9, 6},
      {"annulus", annulus, 1.1, 2.9, 7},      {"annulus", annulus, 1.1, 2.9, 8},
      {"skew wide", skew_wide, 1.5, 18.0, 3}, {"skew wide", skew_wide, 1.5, 18.0, 5},
      {"skew", skew, 1.26, 3.3, 7},           {"skew", skew, 1.26, 3.3, 8},
  };
  std::vector<ClosingScene> out;
  for (const Job& job : jobs) {
    cli::ScanOptions opt;
    opt.vary = "delta.radius";
    opt.from = job.from;
    opt.to = job.to;
    opt.samples = 41;
    opt.target_n = job.n;
    opt.steps = 4 * job.n;
    const auto rows = cli::scan(scene_file(job.base), opt);
    const auto hit = std::find_if(rows.begin(), rows.end(), [](const cli::ScanRow& r) { return r.kind == "target"; });
    if (hit == rows.end()) {
      log += " no scan hit for " + job.name + " n=" + std::to_string(job.n) + ";";
      continue;
    }
    Scene s = job.base;
    s.delta.radius = hit->parameter;
    out.push_back({job.name + " n=" + std::to_string(job.n), s, job.n});
  }
  return out;
}

struct ClosureStats {
  int runs = 0;
  int closed = 0;
  double worst_residual = 0.0;
  double worst_quantization = 0.0;
  std::string failures;
};

void close_from_random_starts(const ClosingScene& cs, int starts, std::mt19937_64& rng, ClosureStats& st) {
  std::uniform_real_distribution<double> ang(0.0, 2 * kPi);
  for (int k = 0; k < starts; ++k) {
    const SeriesRun run = run_series(cs.scene, cs.scene.delta.at(ang(rng)), Direction::Ccw, 4 * cs.n);
    ++st.runs;
    const ClosureReport& r = run.report;
    if (r.closed && r.n == cs.n && r.winding == 1 && r.residual <= 1e-8) {
      ++st.closed;
    } else if (st.failures.size() < 200) {
      st.failures += " " + cs.name + " (closed=" + std::to_string(r.closed) + " n=" + std::to_string(r.n) + ")";
    }
    st.worst_residual = std::max(st.worst_residual, r.residual);
    st.worst_quantization = std::max(st.worst_quantization, r.quantization);
  }
}

std::vector<ClosingScene> g_scanned;
std::string g_scan_log;

const Scene kHexagon{Circle({0, 0}, 1), Circle({0, 0}, 3), Circle({0, 0}, std::sqrt(3.0)), TangencyIndex(1),
                     {1e-9, 1e-10, 1e-8}};

// 2. Closure does not depend on the start.
Outcome closure() {
  std::mt19937_64 rng(202);
  ClosureStats hex;
  close_from_random_starts({"annulus sqrt3", kHexagon, 6}, 20, rng, hex);
  g_scanned = scanned_scenes(g_scan_log);
  ClosureStats scanned;
  for (const ClosingScene& cs : g_scanned) close_from_random_starts(cs, 20, rng, scanned);
  const bool pass = hex.closed == hex.runs && g_scanned.size() == 10 && scanned.closed == scanned.runs;
  std::string detail = "sqrt3 annulus " + std::to_string(hex.closed) + "/" + std::to_string(hex.runs) +
                       " closed with n=6, max residual " + fmt("%.2e", hex.worst_residual) + "; " +
                       std::to_string(g_scanned.size()) + " scanned scenes, " + std::to_string(scanned.closed) + "/" +
                       std::to_string(scanned.runs) + " runs closed, max residual " +
                       fmt("%.2e", scanned.worst_residual);
  if (!g_scan_log.empty()) detail += ";" + g_scan_log;
  if (!scanned.failures.empty()) detail += "; failing:" + scanned.failures;
  return {pass, detail};
}

// 3. Masses of closing series are integer multiples of m(delta).
Outcome quantization() {
  std::mt19937_64 rng(303);
  ClosureStats all;
  close_from_random_starts({"annulus sqrt3", kHexagon, 6}, 5, rng, all);
  for (const ClosingScene& cs : g_scanned) close_from_random_starts(cs, 5, rng, all);
  const SeriesRun run = run_series(kHexagon, kHexagon.delta.at(0.4), Direction::Ccw, 10);
  const double step_err = std::abs(run.series.steps[0].mass - kPi / 6);
  const double total_err = std::abs(run.report.total - kPi);
  const bool pass = all.closed == all.runs && all.worst_quantization <= 1e-8 && step_err <= 1e-10 && total_err <= 1e-10;
  return {pass, std::to_string(all.runs) + " closing runs, max |n m - w m(delta)| " +
                    fmt("%.2e", all.worst_quantization) + " (tol 1e-8); annulus step mass - pi/6 " +
                    fmt("%.1e", step_err) + ", m(delta) - pi " + fmt("%.1e", total_err)};
}

// 4. Zigzag, Steiner and Jacobi-Bertrand identities.
Outcome special_cases() {
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double zig = 0.0;
  int points = 0;
  while (points < 1000) {
    const Point c{4 * u(rng) - 2, 4 * u(rng) - 2};
    const double r0 = 0.3 + u(rng);
    const double r1 = r0 + 0.5 + 3 * u(rng);
    const ZigzagConfig z(Circle(c, r0), Circle(c, r1));
    const PairDensity d = PairDensity::pair(z.alpha0, z.alpha1);
    for (int k = 0; k < 50; ++k, ++points) {
      const double t = 0.02 + 0.96 * u(rng);
      const Point p = c + (r0 + t * (r1 - r0)) * unit_vector(2 * kPi * u(rng));
      zig = std::max(zig, std::abs(black_howland(z, p) / (2 * rho(d, p)) - 1));
    }
  }
  double steiner = 0.0;
  for (int k = 0; k < 20; ++k) {
    const Circle a0({u(rng) - 0.5, u(rng) - 0.5}, 0.5 + u(rng));
    const Circle a1(a0.center + Point{2 * u(rng) - 1, 2 * u(rng) - 1}, a0.radius + 1 + u(rng));
    const Pencil pencil(a0, a1);
    const PencilMember m = pencil.member(0.2 + 0.6 * u(rng));
    if (m.kind != MemberKind::RealCircle) continue;
    steiner = std::max(steiner, steiner_spread(a0, a1, m.circle, 200).max_deviation);
  }
  const LimitReport jb = jacobi_bertrand_limit_check(Circle({0, 0}, 1), Circle({0, 0}, 2), {0, 0}, {1e2, 1e3, 1e4});
  const double jb4 = jb.rows.back().deviation;
  const bool pass = zig <= 1e-12 && steiner <= 1e-10 && jb4 <= 3e-8;
  return {pass, "zigzag/2rho " + fmt("%.1e", zig) + " at " + std::to_string(points) +
                    " points (tol 1e-12); steiner spread " + fmt("%.1e", steiner) +
                    " (tol 1e-10); limit deviation at r1=1e4 " + fmt("%.2e", jb4) + " (tol 3e-8)"};
}

// 5. rho h on tangent circles and F / h^2 on doubly tangent circles.
Outcome chord_distance() {
  std::mt19937_64 rng(505);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_rho = 0.0;
  double worst_f = 0.0;
  int circles = 0;
  while (circles < 1000) {
    const Scene s = random_nested(rng);
    const PairDensity d = s.density();
    const Cyclic f = Cyclic::product(s.alpha0, s.alpha1);
    // Points of the annulus between alpha0 and alpha1 along a random ray.
    const Point p = s.delta.at(2 * kPi * u(rng));
    std::vector<TangentCircle> fam;
    try {
      fam = tangent_circles_through_point(s.alpha0, s.alpha1, p, s.index, 1e-9);
    } catch (const Error&) {
      continue;
    }
    for (const TangentCircle& w : fam) {
      if (w.boundary) continue;
      worst_rho = std::max(worst_rho, verify_prop1(w, d, 64).max_deviation);
      worst_f = std::max(worst_f, verify_prop1_prime(f, w.circle, w.touch0, w.touch1, 64).max_deviation);
      ++circles;
    }
  }
  return {worst_rho <= 1e-9 && worst_f <= 1e-9, std::to_string(circles) + " tangent circles, rho h spread " +
                                                    fmt("%.1e", worst_rho) + ", F/h^2 spread " + fmt("%.1e", worst_f) +
                                                    " (tol 1e-9)"};
}

// 6. First-order perturbation residuals, nested and crossing.
Outcome perturbation() {
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  bool halves = true;
  int checked = 0;
  double worst_ratio_gap = 0.0;
  for (int k = 0; k < 10; ++k) {
    const Scene s = random_nested(rng);
    const auto fam = tangent_circles_through_point(s.alpha0, s.alpha1, s.delta.at(2 * kPi * u(rng)), s.index, 1e-9);
    for (const TangentCircle& w : fam) {
      const InvarianceReport a = verify_invariance(s.density(), s.family(), s.delta, w, 1e-4, s.tol);
      const InvarianceReport b = verify_invariance(s.density(), s.family(), s.delta, w, 5e-5, s.tol);
      if (a.skipped || b.skipped) continue;
      const HalvingCheck h = halving_check(a.residual, b.residual);
      halves = halves && h.pass && a.residual <= 1e-2;
      worst_ratio_gap = std::max(worst_ratio_gap, std::abs(h.ratio - 2));
      ++checked;
    }
    const SeriesRun run = run_series(s, s.delta.at(0.3), Direction::Ccw, 11);
    const SignedInvariantReport sa = signed_invariant_check(run.series, 1e-4);
    const SignedInvariantReport sb = signed_invariant_check(run.series, 5e-5);
    halves = halves && halving_check(sa.spread, sb.spread).pass;
  }
  const Scene crossing{Circle({0, 0}, 1), Circle({0, 0}, 5), Circle({1.2, 0}, 1), TangencyIndex(1), {}};
  const SeriesRun run = run_series(crossing, crossing.delta.at(0.3), Direction::Ccw, 12);
  const SignedInvariantReport a = signed_invariant_check(run.series, 1e-5);
  const SignedInvariantReport b = signed_invariant_check(run.series, 5e-6);
  const bool crossing_ok = a.direction_changes && a.untwisted_spread > 1.0 && halving_check(a.spread, b.spread).pass;
  return {halves && checked >= 10 && crossing_ok,
          std::to_string(checked) + " nested perturbations halve (max |ratio - 2| " + fmt("%.2e", worst_ratio_gap) +
              "); crossing scene: untwisted spread " + fmt("%.2f", a.untwisted_spread) + ", signed spread " +
              fmt("%.2e", a.spread) + " -> " + fmt("%.2e", b.spread)};
}

// 7. Pencil pairs, generalized series and diagonals.
Outcome pencils() {
  const PairSequence general{Circle({0.1, 0.2}, 2), Circle({0.3, 0}, 0.9), Circle({-0.2, 0.1}, 3.4),
                             {1.0, 0.7, 1.1, 0.85}, {1.0, 1.1, 0.9, 1.3}};
  const Prop3Report p3 = verify_prop3(general, 400);

  // Three concentric pairs with step angles pi/2, 2pi/3, 5pi/6, and three generic pairs.
  const double big_r = 10;
  const Circle delta({0, 0}, big_r);
  std::vector<std::pair<Circle, Circle>> closing;
  for (double step : {kPi / 2, 2 * kPi / 3, 5 * kPi / 6}) {
    const double c = std::cos(step / 2);
    closing.emplace_back(Circle({0, 0}, 1), Circle({0, 0}, big_r * (big_r - c) / (big_r * c - 1)));
  }
  std::vector<std::pair<Circle, Circle>> generic;
  for (std::size_t k = 0; k < 3; ++k) generic.push_back(general.pair(k));

  std::mt19937_64 rng(707);
  std::uniform_real_distribution<double> ang(0.0, 2 * kPi);
  bool agree = true;
  int runs = 0;
  int closing_closed = 0;
  for (const auto* pairs : {&closing, &generic}) {
    const Circle& d = pairs == &closing ? delta : general.delta;
    int closed = 0;
    int total = 0;
    for (int s = 0; s < 10; ++s) {
      const double a = ang(rng);
      std::vector<int> order{0, 1, 2};
      do {
        const GeneralizedReport r = run_generalized_series(*pairs, d, TangencyIndex(1), d.at(a), order, 6);
        closed += r.closed ? 1 : 0;
        ++total;
      } while (std::next_permutation(order.begin(), order.end()));
    }
    agree = agree && (closed == 0 || closed == total);
    runs += total;
    if (pairs == &closing) closing_closed = closed;
  }

  double diag = 0.0;
  int diagonals = 0;
  std::vector<Scene> closing_scenes{kHexagon};
  // Diagonals x_k x_{k+3} need more than six points on the series.
  for (const ClosingScene& cs : g_scanned) {
    if (cs.n >= 7) closing_scenes.push_back(cs.scene);
  }
  std::string diag_fail;
  for (const Scene& s : closing_scenes) {
    const SeriesRun run = run_series(s, s.delta.at(0.2), Direction::Ccw, 20);
    for (int r : {2, 3}) {
      try {
        const auto members = diagonal_fixed_circle(run.series, r);
        diag = std::max(diag, members.front().spread);
        ++diagonals;
      } catch (const Error& e) {
        diag_fail += std::string(" ") + e.what();
      }
    }
  }
  const bool pass = p3.spread <= 1e-10 && agree && closing_closed == 60 && diag <= 1e-8 &&
                    diagonals == 2 * static_cast<int>(closing_scenes.size());
  std::string detail = "ratio spread " + fmt("%.1e", p3.spread) + " (tol 1e-10); " + std::to_string(runs) +
                       " generalized runs, verdicts agree: " + (agree ? "yes" : "no") + " (closing set " +
                       std::to_string(closing_closed) + "/60); diagonal parameter spread " + fmt("%.1e", diag) +
                       " over " + std::to_string(diagonals) + " diagonals (tol 1e-8)";
  if (!diag_fail.empty()) detail += ";" + diag_fail;
  return {pass, detail};
}

// 8. The quadric touched by every chord.
Outcome quadric_bridge() {
  const Scene annulus{Circle({0, 0}, 1), Circle({0, 0}, 3), Circle({0, 0}, 2), TangencyIndex(1), {}};
  const PonceletQuadric pq = derive_poncelet_quadric(annulus.alpha0, annulus.alpha1, annulus.delta, Line({1, 0}, 1.75));
  const double ap_err = std::abs(pq.ap - 10);
  const double gamma_err = quadric_distance_up_to_scale(pq.gamma, Quadric::from_circle(Circle({0, 0}, 1.75)));

  std::mt19937_64 rng(808);
  double chord = 0.0;
  double seed = 0.0;
  double roundtrip = 0.0;
  int pairs_found = 0;
  for (int k = 0; k < 20; ++k) {
    const Scene s = random_nested(rng);
    const SeriesRun run = run_series(s, s.delta.at(0.3), Direction::Ccw, 49);
    const auto& st = run.series.steps;
    const PonceletQuadric g = derive_poncelet_quadric(s.alpha0, s.alpha1, s.delta, Line::through(st[0].x, st[0].x_next),
                                                      Line::through(st[1].x, st[1].x_next));
    for (const SeriesStep& x : st) {
      chord = std::max(chord, std::abs(line_tangency_residual(g.gamma, Line::through(x.x, x.x_next))));
    }
    const auto [c1, c2] = series_chords(s, 4.0);
    seed = std::max(seed, quadric_distance_up_to_scale(g.gamma, derive_poncelet_quadric(s.alpha0, s.alpha1, s.delta,
                                                                                         c1, c2).gamma));
    try {
      const CirclePair cp = quadric_to_circle_pair(g.gamma, s.delta);
      roundtrip = std::max(roundtrip, cp.roundtrip);
      ++pairs_found;
    } catch (const Error&) {
    }
  }
  const CirclePair back = quadric_to_circle_pair(pq.gamma, annulus.delta);
  roundtrip = std::max(roundtrip, back.roundtrip);
  const bool pass = ap_err <= 1e-10 && gamma_err <= 1e-10 && chord <= 1e-8 && seed <= 1e-8 && roundtrip <= 1e-8;
  return {pass, "A_p - 10 = " + fmt("%.1e", ap_err) + ", gamma vs radius 7/4 " + fmt("%.1e", gamma_err) +
                    "; 20 scenes: chord residual " + fmt("%.1e", chord) + ", seed independence " + fmt("%.1e", seed) +
                    "; round trip " + fmt("%.1e", roundtrip) + " with pairs found for " +
                    std::to_string(pairs_found) + "/20 (+ annulus)"};
}

// 9. Members of the equivalent pencil agree with the cyclic on delta.
Outcome equivalence() {
  std::mt19937_64 rng(909);
  std::uniform_real_distribution<double> u(-30.0, 30.0);
  double worst = 0.0;
  double inf = 0.0;
  std::vector<Scene> scenes{{Circle({0, 0}, 1), Circle({0, 0}, 3), Circle({0, 0}, 2), TangencyIndex(1), {}}};
  for (int k = 0; k < 10; ++k) scenes.push_back(random_nested(rng));
  for (const Scene& s : scenes) {
    const Cyclic f = Cyclic::product(s.alpha0, s.alpha1);
    const QuadricPencil pencil = equivalent_pencil(f, s.delta);
    for (int k = 0; k < 50; ++k) worst = std::max(worst, equivalence_spread(f, pencil.member(u(rng)), s.delta, 64));
    inf = std::max(inf, quadric_distance_up_to_scale(pencil.member(INFINITY), Quadric::from_circle(s.delta)));
  }
  return {worst <= 1e-10 && inf <= 1e-15, std::to_string(scenes.size()) + " cyclics x 50 members, ratio spread " +
                                              fmt("%.1e", worst) + " (tol 1e-10); infinite member vs delta " +
                                              fmt("%.1e", inf)};
}

// 10. Orientation signs of paired tangent circles are opposite.
Outcome sign_law() {
  std::mt19937_64 rng(1010);
  std::uniform_real_distribution<double> u(-2, 2), r(0.3, 2);
  int cases = 0;
  int bad = 0;
  for (int k = 0; k < 100000 && cases < 1000; ++k) {
    const Circle a0({u(rng), u(rng)}, r(rng));
    const Circle a1({u(rng), u(rng)}, r(rng) + 0.5);
    const Point m{u(rng), u(rng)};
    try {
      for (const auto& c : paired_tangent_cases(a0, a1, m, 1e-9)) {
        ++cases;
        if (c.tau_omega != -c.tau_nu) ++bad;
      }
    } catch (const Error&) {
    }
  }
  return {cases >= 1000 && bad == 0, std::to_string(cases) + " constructions, " + std::to_string(bad) + " sign mismatches"};
}

// 11. The command-line tool writes identical bytes on repeated runs.
Outcome determinism() {
  const std::string dir = EMCH_SCENES_DIR;
  const std::vector<std::vector<std::string>> commands{
      {"run", dir + "/nested.json", "--steps", "40"},
      {"run", dir + "/annulus_hexagon.json", "--steps", "10"},
      {"verify", dir + "/nested.json", "--suite", "measure"},
      {"verify", dir + "/nested.json", "--suite", "pencil"},
      {"verify", dir + "/annulus_quadric.json", "--suite", "quadric"},
      {"scan", dir + "/annulus_hexagon.json", "--from", "1.1", "--to", "2.9", "--samples", "25", "--target-n", "7"},
      {"scan", dir + "/annulus_hexagon.json", "--from", "1.1", "--to", "2.9", "--samples", "25", "--target-n", "7",
       "--threads", "1"},
  };
  auto call = [](std::vector<std::string> args) {
    args.insert(args.begin(), "emch");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return std::to_string(code) + "\n" + out.str();
  };
  int same = 0;
  std::vector<std::string> outputs;
  for (const auto& c : commands) {
    const std::string a = call(c);
    const std::string b = call(c);
    same += a == b ? 1 : 0;
    outputs.push_back(a);
  }
  const bool threads_same = outputs[5] == outputs[6];
  const bool ok = outputs[0].rfind("0\n", 0) == 0;
  return {same == static_cast<int>(commands.size()) && threads_same && ok,
          std::to_string(same) + "/" + std::to_string(commands.size()) +
              " commands byte-identical on repeat; scan identical across thread counts: " + (threads_same ? "yes" : "no")};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"invariance of step masses", invariance},
      {"closure independent of start", closure},
      {"mass quantization", quantization},
      {"special-case identities", special_cases},
      {"tangent circle chord distances", chord_distance},
      {"perturbation differentials", perturbation},
      {"pencils", pencils},
      {"quadric bridge", quadric_bridge},
      {"equivalent pencil", equivalence},
      {"orientation sign law", sign_law},
      {"cli determinism", determinism},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::printf("criterion %2zu %-32s %s  %s\n", k + 1, criteria[k].first, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
