#include "emch/pencils.hpp"

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

}  // namespace

Pencil::Pencil(const Circle& a, const Circle& b, double tol) : a_(a), b_(b), tol_(tol) {
  if (circle_distance(a, b) <= tol) throw Error(ErrorCode::CoincidentCircles, "pencil generators coincide");
}

double Pencil::squared_radius(double t) const {
  const Point dc = b_.center - a_.center;
  const double da = b_.constant() - a_.constant();
  return a_.radius * a_.radius + t * (2.0 * dot(a_.center, dc) - da) + t * t * norm2(dc);
}

Quadric Pencil::quadric(double t) const {
  const Quadric qa = Quadric::from_circle(a_), qb = Quadric::from_circle(b_);
  if (std::isinf(t)) return qb - qa;
  return (1.0 - t) * qa + t * qb;
}

PencilMember Pencil::member(double t) const {
  PencilMember m;
  m.t = t;
  m.quadric = quadric(t);
  if (std::isinf(t)) {
    const Point n = b_.linear() - a_.linear();
    const double c = b_.constant() - a_.constant();
    if (norm(n) <= tol_) {
      m.kind = MemberKind::Empty;
      return m;
    }
    m.kind = MemberKind::Line;
    m.line = Line(n, -c);
    return m;
  }
  const double s = squared_radius(t);
  const double scale = std::max({1.0, a_.radius * a_.radius, b_.radius * b_.radius});
  const Point c = center(t);
  if (s < -tol_ * scale) throw Error(ErrorCode::ImaginaryMember, "pencil member has no real points");
  if (s <= tol_ * scale) {
    m.kind = MemberKind::PointCircle;
    m.point = c;
    return m;
  }
  m.kind = MemberKind::RealCircle;
  m.circle = Circle(c, std::sqrt(s));
  return m;
}

std::vector<TangentMember> tangent_members(const Pencil& pencil, const Circle& probe) {
  const Circle& a = pencil.a();
  const Circle& b = pencil.b();
  const Point g = probe.center;
  const double r2 = probe.radius * probe.radius;
  const double l0 = power(a, g) - r2;
  const double l1 = power(b, g) - power(a, g);
  const Point dc = b.center - a.center;
  const double s0 = a.radius * a.radius;
  const double s1 = 2.0 * dot(a.center, dc) - (b.constant() - a.constant());
  const double s2 = norm2(dc);
  // (l0 + l1 t)^2 = 4 r^2 (s0 + s1 t + s2 t^2)
  const double qa = l1 * l1 - 4 * r2 * s2;
  const double qb = 2 * l0 * l1 - 4 * r2 * s1;
  const double qc = l0 * l0 - 4 * r2 * s0;
  std::vector<TangentMember> out;
  for (double t : real_quadratic_roots(qa, qb, qc)) {
    const double s = pencil.squared_radius(t);
    if (!(s > 0)) continue;
    const Circle m(pencil.center(t), std::sqrt(s));
    out.push_back({t, l0 + l1 * t > 0 ? Contact::Exterior : Contact::Interior, m});
  }
  std::sort(out.begin(), out.end(), [](const TangentMember& x, const TangentMember& y) { return x.t < y.t; });
  return out;
}

std::pair<Circle, Circle> PairSequence::pair(std::size_t k) const {
  if (t0.at(k) == 0.0 || t1.at(k) == 0.0) {
    throw Error(ErrorCode::DegeneratePair, "a member with t = 0 is delta itself");
  }
  const PencilMember m0 = Pencil(delta, alpha0).member(t0[k]);
  const PencilMember m1 = Pencil(delta, alpha1).member(t1[k]);
  if (m0.kind != MemberKind::RealCircle || m1.kind != MemberKind::RealCircle) {
    throw Error(ErrorCode::ImaginaryMember, "pair member is not a real circle");
  }
  return {m0.circle, m1.circle};
}

Prop3Report verify_prop3(const PairSequence& pairs, int samples) {
  if (pairs.size() == 0 || pairs.t0.size() != pairs.t1.size()) {
    throw Error(ErrorCode::InvalidArgument, "pair sequence needs matching non-empty parameter lists");
  }
  Prop3Report rep;
  const auto pts = sample_circle(pairs.delta, samples);
  const auto [b0, b1] = pairs.pair(0);
  const PairDensity base = PairDensity::pair(b0, b1);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto [c0, c1] = pairs.pair(k);
    const PairDensity dk = PairDensity::pair(c0, c1);
    std::vector<double> ratios;
    for (Point x : pts) {
      const double r = rho(dk, x) / rho(base, x);
      if (std::isfinite(r)) ratios.push_back(r);
    }
    double mean = 0.0;
    for (double r : ratios) mean += r;
    mean /= static_cast<double>(ratios.size());
    for (double r : ratios) rep.spread = std::max(rep.spread, std::abs(r - mean) / mean);
    const double predicted =
        1.0 / std::sqrt(std::abs(pairs.t0[k] * pairs.t1[k] / (pairs.t0[0] * pairs.t1[0])));
    rep.constants.push_back(mean);
    rep.predicted.push_back(predicted);
    rep.prediction_error = std::max(rep.prediction_error, std::abs(mean - predicted) / predicted);
  }
  return rep;
}

GeneralizedReport run_generalized_series(const std::vector<std::pair<Circle, Circle>>& pairs, const Circle& delta,
                                         TangencyIndex index, Point x1, const std::vector<int>& order,
                                         int max_cycles, const Tolerances& tol) {
  if (order.empty()) throw Error(ErrorCode::InvalidArgument, "empty pair order");
  for (int j : order) {
    if (j < 0 || j >= static_cast<int>(pairs.size())) throw Error(ErrorCode::InvalidArgument, "pair index out of range");
  }
  for (const auto& [a0, a1] : pairs) {
    const Scene s{a0, a1, delta, index, tol};
    if (!is_nested(s)) throw Error(ErrorCode::NotNested, "generalized series needs nested pairs");
  }
  GeneralizedReport rep;
  rep.points.push_back(x1);
  double sweep = 0.0;
  double best = std::numeric_limits<double>::infinity();

  auto advance = [&](std::size_t j, Point x) -> std::pair<TangentCircle, Point> {
    const auto& [a0, a1] = pairs[j];
    std::vector<TangentCircle> cands;
    try {
      cands = tangent_circles_through_point(a0, a1, x, index, tol.geo);
    } catch (const Error& e) {
      throw Error(ErrorCode::SeriesBlocked, e.what());
    }
    for (const TangentCircle& c : cands) {
      const auto hits = circle_circle_intersection(c.circle, delta, tol.geo);
      if (hits.size() < 2) continue;
      const Point next = distance(hits[0], x) >= distance(hits[1], x) ? hits[0] : hits[1];
      if (ccw_arc_inside(c.circle, delta, x, next)) return {c, next};
    }
    throw Error(ErrorCode::SeriesBlocked, "no circle of the pair leaves the point counterclockwise");
  };

  Point x = x1;
  try {
    for (int cycle = 0; cycle < max_cycles; ++cycle) {
      for (int j : order) {
        const auto [omega, next] = advance(static_cast<std::size_t>(j), x);
        sweep += wrap(delta.angle_of(next) - delta.angle_of(x));
        rep.circles.push_back(omega);
        rep.points.push_back(next);
        x = next;
      }
      const auto [again, unused] = advance(static_cast<std::size_t>(order.front()), x);
      const double res = circle_distance(again.circle, rep.circles.front().circle);
      if (res <= tol.close && distance(x, x1) <= tol.close) {
        rep.closed = true;
        rep.stop = StopReason::Closed;
        rep.residual = res;
        break;
      }
      best = std::min(best, res);
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SeriesBlocked) throw;
    rep.stop = StopReason::Blocked;
    rep.message = e.what();
  }
  rep.n = static_cast<int>(rep.circles.size());
  if (!rep.closed) rep.residual = best;
  rep.winding = static_cast<int>(rep.closed ? std::lround(sweep / kTwoPi) : std::trunc(sweep / kTwoPi));
  return rep;
}

std::vector<FixedMember> common_tangent_member(const std::vector<std::pair<Point, Point>>& chords,
                                               const Circle& alpha0, const Pencil& pencil,
                                               std::optional<TangencyIndex> index, double tol) {
  if (chords.empty()) throw Error(ErrorCode::InvalidArgument, "no chords");
  const double scale = std::max({1.0, alpha0.radius, pencil.a().radius, pencil.b().radius});
  std::vector<std::vector<double>> per_chord;
  for (const auto& [p, q] : chords) {
    std::vector<double> ts;
    for (const auto& nu : circles_through_points_tangent_to(p, q, alpha0, tol)) {
      for (const TangentMember& m : tangent_members(pencil, nu.circle)) {
        if (circle_distance(m.member, alpha0) <= 1e-7 * scale) continue;
        const int parity = ((nu.contact == Contact::Interior) + (m.contact == Contact::Interior)) % 2;
        if (index && parity != index->value()) continue;
        ts.push_back(m.t);
      }
    }
    if (ts.empty()) throw Error(ErrorCode::NoTangentMember, "no real pencil member touches a chord circle");
    per_chord.push_back(std::move(ts));
  }
  std::vector<FixedMember> out;
  for (double t0 : per_chord.front()) {
    FixedMember fm;
    fm.fitted.push_back(t0);
    for (std::size_t k = 1; k < per_chord.size(); ++k) {
      double nearest = per_chord[k].front();
      for (double t : per_chord[k]) {
        if (std::abs(t - t0) < std::abs(nearest - t0)) nearest = t;
      }
      fm.fitted.push_back(nearest);
    }
    const auto [lo, hi] = std::minmax_element(fm.fitted.begin(), fm.fitted.end());
    double sum = 0.0;
    for (double t : fm.fitted) sum += t;
    fm.t = sum / static_cast<double>(fm.fitted.size());
    fm.spread = (*hi - *lo) / (1.0 + std::abs(fm.t));
    if (fm.spread > 1e-6) continue;
    if (std::any_of(out.begin(), out.end(), [&](const FixedMember& o) {
          return std::abs(o.t - fm.t) <= 1e-6 * (1.0 + std::abs(fm.t));
        })) {
      continue;
    }
    fm.member = pencil.member(fm.t);
    out.push_back(std::move(fm));
  }
  if (out.empty()) throw Error(ErrorCode::NoTangentMember, "chord circles do not share a tangent pencil member");
  std::sort(out.begin(), out.end(), [](const FixedMember& a, const FixedMember& b) { return a.spread < b.spread; });
  return out;
}

std::vector<FixedMember> diagonal_fixed_circle(const CircularSeries& series, int r,
                                               std::optional<TangencyIndex> index) {
  const Scene& s = series.scene;
  if (!is_nested(s)) throw Error(ErrorCode::NotNested, "diagonals need a nested scene");
  if (r < 1 || static_cast<int>(series.steps.size()) < r + 1) {
    throw Error(ErrorCode::InvalidArgument, "series too short for the requested diagonal");
  }
  std::vector<Point> xs;
  for (const SeriesStep& st : series.steps) xs.push_back(st.x);
  xs.push_back(series.steps.back().x_next);
  std::vector<std::pair<Point, Point>> chords;
  for (std::size_t k = 0; k + r < xs.size(); ++k) {
    if (distance(xs[k], xs[k + r]) <= s.tol.close) continue;
    chords.emplace_back(xs[k], xs[k + r]);
  }
  return common_tangent_member(chords, s.alpha0, Pencil(s.delta, s.alpha1), index, s.tol.geo);
}

std::vector<FixedMember> fixed_mass_member(const Scene& scene, const std::vector<double>& start_angles, double mass,
                                           std::optional<TangencyIndex> index) {
  if (!is_nested(scene)) throw Error(ErrorCode::NotNested, "fixed-mass chords need a nested scene");
  const RestrictedDensity density(scene.density(), scene.delta, scene.tol.quad);
  std::vector<std::pair<Point, Point>> chords;
  for (double a : start_angles) {
    chords.emplace_back(scene.delta.at(a), scene.delta.at(density.angle_at_mass(a, mass)));
  }
  return common_tangent_member(chords, scene.alpha0, Pencil(scene.delta, scene.alpha1), index, scene.tol.geo);
}

std::vector<FixedMember> parallel_series_member(const CircularSeries& a, const CircularSeries& b,
                                                std::optional<TangencyIndex> index) {
  const Scene& s = a.scene;
  if (!is_nested(s)) throw Error(ErrorCode::NotNested, "parallel series need a nested scene");
  std::vector<std::pair<Point, Point>> chords;
  for (std::size_t k = 0; k < std::min(a.steps.size(), b.steps.size()); ++k) {
    chords.emplace_back(a.steps[k].x, b.steps[k].x);
  }
  return common_tangent_member(chords, s.alpha0, Pencil(s.delta, s.alpha1), index, s.tol.geo);
}

}  // namespace emch
