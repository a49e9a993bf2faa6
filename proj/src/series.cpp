#include "emch/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace emch {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0) t += kTwoPi;
  return t;
}

double scene_scale(const Scene& s) {
  return std::max({1.0, s.alpha0.radius, s.alpha1.radius, s.delta.radius});
}

Point farther_intersection(const Circle& omega, const Circle& delta, Point x, double tol) {
  const auto hits = circle_circle_intersection(omega, delta, tol);
  if (hits.size() < 2) throw Error(ErrorCode::SeriesBlocked, "circle does not cut delta in two points");
  return distance(hits[0], x) >= distance(hits[1], x) ? hits[0] : hits[1];
}

SeriesStep make_step(const Scene& scene, const TangentCircle& omega, Point x, Point x_next, Direction dir,
                     const RestrictedDensity& density) {
  SeriesStep step{omega, x, x_next, 1, 0.0};
  const Circle& delta = scene.delta;
  const double tx = delta.angle_of(x), tn = delta.angle_of(x_next);
  const bool ccw = ccw_arc_inside(omega.circle, delta, x, x_next);
  step.mass = ccw ? density.mass(tx, wrap(tn - tx)).value : density.mass(tn, wrap(tx - tn)).value;
  step.sign = (ccw == (dir == Direction::Ccw)) ? 1 : -1;
  return step;
}

TangentCircle with_touch_points(const Scene& scene, const Circle& omega) {
  const double tol = scene.tol.geo * scene_scale(scene);
  TangentCircle tc;
  tc.circle = omega;
  tc.index = classify_index(omega, scene.alpha0, scene.alpha1, tol);
  tc.touch0 = tangency_point(omega, scene.alpha0, tol);
  tc.touch1 = tangency_point(omega, scene.alpha1, tol);
  return tc;
}

std::vector<TangentCircle> family_through(const Scene& scene, Point x) {
  try {
    return tangent_circles_through_point(scene.alpha0, scene.alpha1, x, scene.index, scene.tol.geo);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NoRealSolution || e.code() == ErrorCode::PointOnBaseCircle) {
      throw Error(ErrorCode::SeriesBlocked, e.what());
    }
    throw;
  }
}

bool inside(const Circle& inner, const Circle& outer, double slack) {
  return distance(inner.center, outer.center) + inner.radius <= outer.radius + slack;
}

}  // namespace

bool ccw_arc_inside(const Circle& omega, const Circle& delta, Point a, Point b) {
  const double ta = delta.angle_of(a);
  const double mid = ta + 0.5 * wrap(delta.angle_of(b) - ta);
  return power(omega, delta.at(mid)) < 0.0;
}

bool is_nested(const Scene& s) {
  return distance(s.alpha0.center, s.delta.center) + s.alpha0.radius < s.delta.radius &&
         distance(s.delta.center, s.alpha1.center) + s.delta.radius < s.alpha1.radius;
}

SeriesStep first_step(const Scene& scene, Point x, Direction dir, const RestrictedDensity& density) {
  for (const TangentCircle& tc : family_through(scene, x)) {
    const auto hits = circle_circle_intersection(tc.circle, scene.delta, scene.tol.geo);
    if (hits.size() < 2) continue;
    const Point x_next = farther_intersection(tc.circle, scene.delta, x, scene.tol.geo);
    if (ccw_arc_inside(tc.circle, scene.delta, x, x_next) == (dir == Direction::Ccw)) {
      return make_step(scene, tc, x, x_next, dir, density);
    }
  }
  throw Error(ErrorCode::SeriesBlocked, "no family circle through the start point leaves it in the travel direction");
}

SeriesStep first_step(const Scene& scene, const Circle& omega, Direction dir, const RestrictedDensity& density) {
  const TangentCircle tc = with_touch_points(scene, omega);
  if (tc.index != scene.index) throw Error(ErrorCode::NotTangent, "start circle has the wrong tangency index");
  const auto hits = circle_circle_intersection(omega, scene.delta, scene.tol.geo);
  if (hits.size() < 2) throw Error(ErrorCode::SeriesBlocked, "start circle does not cut delta in two points");
  const bool ccw = ccw_arc_inside(omega, scene.delta, hits[0], hits[1]);
  const bool forward = ccw == (dir == Direction::Ccw);
  const Point x = forward ? hits[0] : hits[1];
  const Point x_next = forward ? hits[1] : hits[0];
  return make_step(scene, tc, x, x_next, dir, density);
}

void next_step(CircularSeries& series, const RestrictedDensity& density) {
  if (series.steps.empty()) throw Error(ErrorCode::InvalidArgument, "series has no first circle");
  const Scene& scene = series.scene;
  const SeriesStep& last = series.steps.back();
  const Point x = last.x_next;
  const auto candidates = family_through(scene, x);
  if (candidates.size() < 2 || std::any_of(candidates.begin(), candidates.end(),
                                           [](const TangentCircle& c) { return c.boundary; })) {
    throw Error(ErrorCode::SeriesBlocked, "the two family circles through the point coincide");
  }
  const TangentCircle* other = &candidates[0];
  for (const TangentCircle& c : candidates) {
    if (circle_distance(c.circle, last.omega.circle) > circle_distance(other->circle, last.omega.circle)) {
      other = &c;
    }
  }
  if (circle_distance(other->circle, last.omega.circle) <= scene.tol.geo) {
    throw Error(ErrorCode::SeriesBlocked, "no other family circle through the point");
  }
  const Point x_next = farther_intersection(other->circle, scene.delta, x, scene.tol.geo);
  series.steps.push_back(make_step(scene, *other, x, x_next, series.direction, density));
}

SeriesRun run_series(const Scene& scene, const SeriesStep& first, Direction dir, int max_steps) {
  const RestrictedDensity density(scene.density(), scene.delta, scene.tol.quad);
  SeriesRun run;
  run.series.scene = scene;
  run.series.direction = dir;
  run.series.steps.push_back(first);
  ClosureReport& rep = run.report;
  rep.total = density.total();
  double best = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= max_steps; ++k) {
    try {
      next_step(run.series, density);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::SeriesBlocked) throw;
      rep.stop = StopReason::Blocked;
      rep.message = e.what();
      break;
    }
    const SeriesStep& s = run.series.steps.back();
    const double res = circle_distance(s.omega.circle, first.omega.circle);
    if (res <= scene.tol.close && distance(s.x, first.x) <= scene.tol.close) {
      rep.closed = true;
      rep.stop = StopReason::Closed;
      rep.n = k;
      rep.residual = res;
      break;
    }
    best = std::min(best, res);
  }
  const auto& steps = run.series.steps;
  if (!rep.closed) {
    rep.n = static_cast<int>(steps.size());
    rep.residual = best;
  }
  for (int k = 0; k < rep.n && k < static_cast<int>(steps.size()); ++k) {
    rep.mass_sum += steps[k].sign * steps[k].mass;
  }
  const double turns = rep.mass_sum / rep.total;
  rep.winding = static_cast<int>(rep.closed ? std::lround(turns) : std::trunc(turns));
  rep.quantization = std::abs(rep.mass_sum - rep.winding * rep.total);
  return run;
}

SeriesRun run_series(const Scene& scene, Point x1, Direction dir, int max_steps) {
  const RestrictedDensity density(scene.density(), scene.delta, scene.tol.quad);
  return run_series(scene, first_step(scene, x1, dir, density), dir, max_steps);
}

RotationReport rotation_number(const Scene& scene, Point x1, int steps) {
  if (!is_nested(scene)) throw Error(ErrorCode::NotNested, "rotation number needs alpha0 inside delta inside alpha1");
  const SeriesRun run = run_series(scene, x1, Direction::Ccw, std::max(0, steps - 1));
  RotationReport rep;
  rep.total = run.report.total;
  rep.step_mass = run.series.steps.front().mass;
  rep.value = rep.step_mass / rep.total;
  for (const SeriesStep& s : run.series.steps) {
    rep.step_spread = std::max(rep.step_spread, std::abs(s.mass - rep.step_mass) / rep.step_mass);
  }
  return rep;
}

int step_orientation(const SeriesStep& step) { return orientation(step.x, step.omega.touch0, step.omega.touch1); }

SignedInvariantReport signed_invariant_check(const CircularSeries& series, double eps) {
  if (series.steps.empty()) throw Error(ErrorCode::InvalidArgument, "empty series");
  const Scene& scene = series.scene;
  const SeriesStep& first = series.steps.front();
  if (!inside(first.omega.circle, scene.alpha1, scene.tol.geo * scene_scale(scene))) {
    throw Error(ErrorCode::AssumptionViolated, "the first circle is not inside alpha1");
  }
  const Circle& delta = scene.delta;
  const RestrictedDensity density(scene.density(), delta, scene.tol.quad);
  const Point moved = delta.at(delta.angle_of(first.x) + eps / delta.radius);
  const auto candidates = family_through(scene, moved);
  const TangentCircle* near = &candidates.front();
  for (const TangentCircle& c : candidates) {
    if (circle_distance(c.circle, first.omega.circle) < circle_distance(near->circle, first.omega.circle)) near = &c;
  }
  CircularSeries perturbed{scene, series.direction, {}};
  perturbed.steps.push_back(
      make_step(scene, *near, moved, farther_intersection(near->circle, delta, moved, scene.tol.geo),
                series.direction, density));
  while (perturbed.steps.size() < series.steps.size()) next_step(perturbed, density);

  SignedInvariantReport rep;
  const PairDensity d = scene.density();
  for (std::size_t k = 0; k < series.steps.size(); ++k) {
    const SeriesStep& s = series.steps[k];
    const double turn = delta.angle_of(perturbed.steps[k].x) - delta.angle_of(s.x);
    const double dx = delta.radius * std::remainder(turn, kTwoPi);
    const double plain = rho(d, s.x) * dx;
    rep.untwisted_values.push_back(plain);
    rep.signed_values.push_back(step_orientation(s) * plain);
  }
  auto spread = [](const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x - v.front()) / std::abs(v.front()));
    return m;
  };
  rep.spread = spread(rep.signed_values);
  rep.untwisted_spread = spread(rep.untwisted_values);
  for (double v : rep.untwisted_values) {
    if ((v > 0) != (rep.untwisted_values.front() > 0)) rep.direction_changes = true;
  }
  return rep;
}

std::vector<PairedTangentCase> paired_tangent_cases(const Circle& alpha0, const Circle& alpha1, Point m, double tol) {
  const auto all = all_tangent_circles_through_point(alpha0, alpha1, m, tol);
  std::vector<PairedTangentCase> out;
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      const TangentCircle &a = all[i], &b = all[j];
      if (circle_distance(a.circle, b.circle) <= tol) continue;
      if (classify_contact(a.circle, alpha0, tol) != classify_contact(b.circle, alpha0, tol)) continue;
      if (classify_contact(a.circle, alpha1, tol) != classify_contact(b.circle, alpha1, tol)) continue;
      out.push_back({a, b, orientation(m, a.touch0, a.touch1), orientation(m, b.touch0, b.touch1)});
    }
  }
  return out;
}

Normalization normalize_assumption1(const Scene& scene, const TangentCircle& omega) {
  const double slack = scene.tol.geo * scene_scale(scene);
  Normalization out;
  out.scene = scene;
  out.omega = omega;
  const Circle& a1 = scene.alpha1;
  if (inside(omega.circle, a1, slack)) return out;
  const double d = distance(omega.circle.center, a1.center);
  const bool touching = std::abs(d - (omega.circle.radius + a1.radius)) <= slack ||
                        std::abs(d - std::abs(omega.circle.radius - a1.radius)) <= slack;
  if (!touching) throw Error(ErrorCode::NotTangentConfiguration, "omega must touch alpha1, not cross it");

  const Circle* circles[] = {&scene.alpha0, &scene.alpha1, &scene.delta, &omega.circle};
  for (double s : {0.0, 0.3, 0.6, 0.85}) {
    for (int j = 0; j < (s == 0.0 ? 1 : 8); ++j) {
      const Point c = a1.center + s * a1.radius * unit_vector(0.37 + kTwoPi * j / 8);
      bool clear = true;
      for (const Circle* k : circles) {
        if (std::abs(distance(c, k->center) - k->radius) < 1e-3 * k->radius) clear = false;
      }
      if (!clear) continue;
      const Inversion inv(c, a1.radius * a1.radius);
      std::vector<Circle> images;
      for (const Circle* k : circles) {
        const CircleOrLine img = invert_circle(inv, *k, 0.0);
        if (!std::holds_alternative<Circle>(img)) break;
        images.push_back(std::get<Circle>(img));
      }
      if (images.size() != 4) continue;
      Scene t = scene;
      t.alpha0 = images[0];
      t.alpha1 = images[1];
      t.delta = images[2];
      const double tslack = scene.tol.geo * scene_scale(t);
      if (!inside(images[3], t.alpha1, tslack)) continue;
      TangentCircle w;
      w.circle = images[3];
      try {
        w.index = classify_index(w.circle, t.alpha0, t.alpha1, std::max(tslack, 1e-9));
      } catch (const Error&) {
        continue;
      }
      w.touch0 = inv.apply(omega.touch0);
      w.touch1 = inv.apply(omega.touch1);
      t.index = w.index;
      out.identity = false;
      out.inversion = inv;
      out.scene = t;
      out.omega = w;
      return out;
    }
  }
  throw Error(ErrorCode::NormalizationFailed, "no inversion center in the search grid satisfies the containment test");
}

}  // namespace emch
