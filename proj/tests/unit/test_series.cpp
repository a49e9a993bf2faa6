#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "emch/series.hpp"

using namespace emch;

namespace {

Scene annulus(double r) { return {Circle({0, 0}, 1), Circle({0, 0}, 3), Circle({0, 0}, r), TangencyIndex(1), {}}; }

}  // namespace

TEST_CASE("first step on the closing annulus") {
  const Scene s = annulus(std::sqrt(3.0));
  const RestrictedDensity d(s.density(), s.delta, s.tol.quad);
  const SeriesStep st = first_step(s, Circle({2, 0}, 1), Direction::Ccw, d);
  // Chord endpoints sit at +-pi/6 about the center ray.
  CHECK(std::abs(std::abs(s.delta.angle_of(st.x)) - std::numbers::pi / 6) < 1e-12);
  CHECK(s.delta.angle_of(st.x) < 0);
  CHECK(s.delta.angle_of(st.x_next) == doctest::Approx(std::numbers::pi / 6).epsilon(1e-12));
  CHECK(st.mass == doctest::Approx(std::numbers::pi / 6).epsilon(1e-12));
  CHECK(st.sign == 1);

  CircularSeries series{s, Direction::Ccw, {st}};
  next_step(series, d);
  const Circle& next = series.steps[1].omega.circle;
  CHECK(next.radius == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::atan2(next.center.y, next.center.x) == doctest::Approx(std::numbers::pi / 3).epsilon(1e-12));
}

TEST_CASE("closing annulus closes after six steps") {
  const Scene s = annulus(std::sqrt(3.0));
  const RestrictedDensity d(s.density(), s.delta, s.tol.quad);
  const SeriesRun run = run_series(s, first_step(s, Circle({2, 0}, 1), Direction::Ccw, d), Direction::Ccw, 20);
  CHECK(run.report.closed);
  CHECK(run.report.n == 6);
  CHECK(run.report.winding == 1);
  CHECK(run.report.residual <= 1e-9);
  CHECK(run.report.total == doctest::Approx(std::numbers::pi).epsilon(1e-12));
  CHECK(run.report.quantization <= 1e-10);
}

TEST_CASE("open annulus does not close") {
  const Scene s = annulus(2.0);
  const SeriesRun run = run_series(s, s.delta.at(0.0), Direction::Ccw, 10000);
  CHECK_FALSE(run.report.closed);
  CHECK(run.report.residual > s.tol.close);
  const RotationReport rot = rotation_number(s, s.delta.at(0.0), 10);
  CHECK(rot.value == doctest::Approx(std::acos(7.0 / 8) / std::numbers::pi).epsilon(1e-11));
  CHECK(rot.step_spread <= 1e-9);
}

TEST_CASE("rotation number of the closing annulus") {
  const RotationReport rot = rotation_number(annulus(std::sqrt(3.0)), {std::sqrt(3.0), 0}, 6);
  CHECK(rot.value == doctest::Approx(1.0 / 6).epsilon(1e-12));
  Scene bad = annulus(2.0);
  bad.delta = Circle({1.5, 0}, 1);
  CHECK_THROWS_AS(rotation_number(bad, bad.delta.at(1.0), 3), Error);
}

TEST_CASE("closure is independent of the start") {
  const Scene s = annulus(std::sqrt(3.0));
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> ang(0, 2 * std::numbers::pi);
  for (int k = 0; k < 20; ++k) {
    const SeriesRun run = run_series(s, s.delta.at(ang(rng)), Direction::Ccw, 50);
    CHECK(run.report.closed);
    CHECK(run.report.n == 6);
    CHECK(run.report.winding == 1);
  }
}

TEST_CASE("blocked series") {
  // delta tangent to the start circle.
  Scene s = annulus(2.0);
  s.delta = Circle({2, 2}, 1);
  const RestrictedDensity d(s.density(), s.delta, s.tol.quad);
  CHECK_THROWS_AS(first_step(s, Circle({2, 0}, 1), Direction::Ccw, d), Error);
}

TEST_CASE("reversal retraces the series") {
  const Scene s{Circle({0.2, 0.1}, 1), Circle({-0.1, 0.05}, 3.2), Circle({0.05, -0.1}, 2.1), TangencyIndex(1), {}};
  const SeriesRun fwd = run_series(s, s.delta.at(0.4), Direction::Ccw, 7);
  const auto& steps = fwd.series.steps;
  const RestrictedDensity d(s.density(), s.delta, s.tol.quad);
  const SeriesStep back_first = first_step(s, steps.back().omega.circle, Direction::Cw, d);
  CHECK(distance(back_first.x, steps.back().x_next) < 1e-9);
  const SeriesRun back = run_series(s, back_first, Direction::Cw, 7);
  REQUIRE(back.series.steps.size() == steps.size());
  for (std::size_t k = 0; k < steps.size(); ++k) {
    CHECK(circle_distance(back.series.steps[k].omega.circle, steps[steps.size() - 1 - k].omega.circle) < 1e-9);
  }
}

TEST_CASE("signed invariant on the closing annulus") {
  const Scene s = annulus(std::sqrt(3.0));
  const SeriesRun run = run_series(s, s.delta.at(0.3), Direction::Ccw, 5);
  const auto a = signed_invariant_check(run.series, 1e-4);
  const auto b = signed_invariant_check(run.series, 5e-5);
  CHECK(a.spread <= 1e-3);
  CHECK(halving_check(a.spread, b.spread).pass);
  for (const SeriesStep& st : run.series.steps) CHECK(step_orientation(st) == step_orientation(run.series.steps[0]));
}

TEST_CASE("signed invariant survives direction changes") {
  const Scene s{Circle({0, 0}, 1), Circle({0, 0}, 5), Circle({1.2, 0}, 1), TangencyIndex(1), {}};
  const SeriesRun run = run_series(s, s.delta.at(0.3), Direction::Ccw, 12);
  REQUIRE(run.series.steps.size() >= 6);
  const auto a = signed_invariant_check(run.series, 1e-5);
  const auto b = signed_invariant_check(run.series, 5e-6);
  CHECK(a.direction_changes);
  CHECK(a.untwisted_spread > 1.0);
  CHECK(a.spread <= 1e-3);
  CHECK(halving_check(a.spread, b.spread).pass);
}

TEST_CASE("orientation sign law for paired tangent circles") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-2, 2), r(0.3, 2);
  int cases = 0;
  for (int k = 0; k < 300; ++k) {
    const Circle a0({u(rng), u(rng)}, r(rng)), a1({u(rng), u(rng)}, r(rng) + 0.5);
    const Point m{u(rng), u(rng)};
    try {
      for (const auto& c : paired_tangent_cases(a0, a1, m, 1e-9)) {
        CHECK(c.tau_omega == -c.tau_nu);
        ++cases;
      }
    } catch (const Error&) {
    }
  }
  CHECK(cases > 100);
}

TEST_CASE("normalization") {
  const Scene s = annulus(2.0);
  const TangentCircle inside{Circle({2, 0}, 1), {1, 0}, {3, 0}, TangencyIndex(1)};
  CHECK(normalize_assumption1(s, inside).identity);

  // Index 0 circle outside alpha1, touching both base circles externally.
  const Scene s0{Circle({5, 0}, 1), Circle({0, 0}, 3), Circle({0, 0}, 2), TangencyIndex(0), {}};
  const TangentCircle outside{Circle({3.5, 0}, 0.5), {4, 0}, {3, 0}, TangencyIndex(0)};
  const Normalization n = normalize_assumption1(s0, outside);
  CHECK_FALSE(n.identity);
  CHECK(distance(n.omega.circle.center, n.scene.alpha1.center) + n.omega.circle.radius <= n.scene.alpha1.radius + 1e-9);
  CHECK(tangency_residual(n.omega.circle, n.scene.alpha0) < 1e-9);

  const TangentCircle crossing{Circle({3, 0}, 1), {4, 0}, {3, 0}, TangencyIndex(0)};
  CHECK_THROWS_AS(normalize_assumption1(s0, crossing), Error);
}
