#include "emch/conic_bridge.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

namespace emch {
namespace {

Cyclic scaled(const Cyclic& f, double s) {
  Cyclic g = f;
  g.lambda *= s;
  g.linear = s * g.linear;
  g.quadratic = s * g.quadratic;
  return g;
}

double max_abs(const Cyclic& f) {
  return std::max({std::abs(f.lambda), std::abs(f.linear.x), std::abs(f.linear.y), f.quadratic.max_abs_coefficient()});
}

}  // namespace

QuadricPencil::QuadricPencil(const Cyclic& f, const Circle& delta) : delta_(delta) {
  if (f.is_zero()) throw Error(ErrorCode::InvalidArgument, "cyclic is identically zero");
  Cyclic g = f;
  // A quartic part is normalized to lambda = 1; lambda = 0 inputs are used as given.
  if (std::abs(f.lambda) > 1e-14 * max_abs(f)) {
    mu_ = f.lambda;
    g = scaled(f, 1.0 / f.lambda);
  } else {
    g.lambda = 0.0;
  }
  lp_ = g.linear - g.lambda * delta.linear();
  q0_ = reduce_on_circle(g, delta);
}

Quadric QuadricPencil::member(double a) const {
  const Quadric fd = Quadric::from_circle(delta_);
  if (std::isinf(a)) return fd;
  return q0_ - a * fd;
}

EquivalenceWitness QuadricPencil::witness(double a) const { return {lp_, a, mu_, member(a)}; }

QuadricPencil equivalent_pencil(const Cyclic& f, const Circle& delta) { return QuadricPencil(f, delta); }

double equivalence_spread(const Cyclic& f, const Quadric& q, const Circle& delta, int samples) {
  std::vector<double> ratios;
  double qmax = 0.0;
  const auto pts = sample_circle(delta, samples);
  for (Point x : pts) qmax = std::max(qmax, std::abs(q(x)));
  for (Point x : pts) {
    const double qx = q(x);
    if (std::abs(qx) <= 1e-6 * qmax) continue;
    ratios.push_back(f(x) / qx);
  }
  if (ratios.empty()) throw Error(ErrorCode::InvalidArgument, "quadric vanishes on delta");
  double mean = 0.0;
  for (double r : ratios) mean += r;
  mean /= static_cast<double>(ratios.size());
  double spread = 0.0;
  for (double r : ratios) spread = std::max(spread, std::abs(r - mean) / std::abs(mean));
  return spread;
}

void check_double_tangency(const Cyclic& f, const Circle& omega, Point t0, Point t1, double tol) {
  const double r = omega.radius;
  for (Point t : {t0, t1}) {
    if (std::abs(distance(t, omega.center) - r) > tol * std::max(1.0, r)) {
      throw Error(ErrorCode::NotDoublyTangent, "touch point is not on omega");
    }
    const Point grad = f.gradient(t);
    const double g = norm(grad);
    // |F(t)| against the size of its first-order variation over omega.
    if (std::abs(f(t)) > tol * std::max(g * r, 1e-300)) {
      throw Error(ErrorCode::NotDoublyTangent, "cyclic does not pass through the touch point");
    }
    if (g > 0.0 && std::abs(cross(grad, t - omega.center)) > tol * g * r) {
      throw Error(ErrorCode::NotDoublyTangent, "cyclic crosses omega at the touch point");
    }
  }
  if (distance(t0, t1) <= tol * std::max(1.0, r)) throw Error(ErrorCode::NotDoublyTangent, "touch points coincide");
}

SpreadReport verify_prop1_prime(const Cyclic& f, const Circle& omega, Point t0, Point t1, int samples) {
  check_double_tangency(f, omega, t0, t1);
  const Line base = Line::through(t0, t1);
  SpreadReport rep;
  std::vector<double> values;
  for (Point x : sample_circle(omega, samples)) {
    if (std::min(distance(x, t0), distance(x, t1)) < 0.02 * omega.radius) {
      ++rep.skipped;
      continue;
    }
    const double h = base.signed_distance(x);
    values.push_back(f(x) / (h * h));
  }
  rep.used = static_cast<int>(values.size());
  if (values.empty()) return rep;
  for (double v : values) rep.mean += v;
  rep.mean /= static_cast<double>(values.size());
  for (double v : values) rep.max_deviation = std::max(rep.max_deviation, std::abs(v - rep.mean) / std::abs(rep.mean));
  return rep;
}

DoubleLineReport double_line_member(const Cyclic& f, const Circle& omega, Point t0, Point t1) {
  check_double_tangency(f, omega, t0, t1);
  const QuadricPencil pencil(f, omega);
  const auto q0 = pencil.base().coefficients();
  const auto fo = Quadric::from_circle(omega).coefficients();
  const auto l2 = Quadric::from_line_squared(Line::through(t0, t1)).coefficients();
  // q0 = A f_omega + s L^2 in the least squares sense.
  Eigen::Matrix<double, 6, 2> m;
  Eigen::Matrix<double, 6, 1> rhs;
  for (int i = 0; i < 6; ++i) {
    m(i, 0) = fo[i];
    m(i, 1) = l2[i];
    rhs(i) = q0[i];
  }
  const Eigen::Vector2d sol = m.colPivHouseholderQr().solve(rhs);
  DoubleLineReport rep;
  rep.a = sol(0);
  rep.scale = sol(1);
  rep.member = pencil.member(rep.a);
  rep.residual = (m * sol - rhs).cwiseAbs().maxCoeff() / rhs.cwiseAbs().maxCoeff();
  return rep;
}

std::vector<double> poncelet_ap_candidates(const Circle& alpha0, const Circle& alpha1, const Circle& delta,
                                           const Line& chord) {
  const QuadricPencil pencil(Cyclic::product(alpha0, alpha1), delta);
  const auto [a0, b0, c0] = restrict_to_line(pencil.base(), chord);
  const auto [a1, b1, c1] = restrict_to_line(Quadric::from_circle(delta), chord);
  // disc(A) of (a0 - A a1) s^2 + (b0 - A b1) s + (c0 - A c1).
  const double k2 = b1 * b1 - 4 * a1 * c1;
  const double k1 = -2 * b0 * b1 + 4 * (a0 * c1 + a1 * c0);
  const double k0 = b0 * b0 - 4 * a0 * c0;
  std::vector<double> out;
  for (double a : real_quadratic_roots(k2, k1, k0)) {
    const Quadric q = pencil.member(a);
    const double lead = a0 - a * a1;
    if (std::abs(lead) <= 1e-9 * q.max_abs_coefficient()) continue;
    out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

PonceletQuadric derive_poncelet_quadric(const Circle& alpha0, const Circle& alpha1, const Circle& delta,
                                        const Line& chord, std::optional<Line> second) {
  const auto cands = poncelet_ap_candidates(alpha0, alpha1, delta, chord);
  if (cands.empty()) throw Error(ErrorCode::NoRealAp, "no member of the pencil is tangent to the chord");
  const QuadricPencil pencil(Cyclic::product(alpha0, alpha1), delta);
  double ap = cands.front();
  if (cands.size() > 1) {
    if (!second) throw Error(ErrorCode::AmbiguousAp, "several members are tangent to the chord");
    double best = std::numeric_limits<double>::infinity();
    for (double a : cands) {
      double r = std::numeric_limits<double>::infinity();
      try {
        r = std::abs(line_tangency_residual(pencil.member(a), *second));
      } catch (const Error&) {
      }
      if (r < best) {
        best = r;
        ap = a;
      }
    }
  }
  return {ap, pencil.member(ap), pencil.witness(ap)};
}

ConicKind classify_conic(const Quadric& q, double tol) {
  const double s = q.max_abs_coefficient();
  if (s == 0.0) return ConicKind::Degenerate;
  const Quadric n = (1.0 / s) * q;
  const double det = n.determinant();
  const double d2 = n.a11 * n.a22 - n.a12 * n.a12;
  if (std::abs(det) <= tol) return ConicKind::Degenerate;
  if (d2 > tol) {
    if (n.a11 * det > 0) return ConicKind::Empty;
    if (std::abs(n.a11 - n.a22) <= tol && std::abs(n.a12) <= tol) return ConicKind::Circle;
    return ConicKind::Ellipse;
  }
  if (d2 < -tol) return ConicKind::Hyperbola;
  return ConicKind::Parabola;
}

const char* to_string(ConicKind k) {
  switch (k) {
    case ConicKind::Circle: return "circle";
    case ConicKind::Ellipse: return "ellipse";
    case ConicKind::Hyperbola: return "hyperbola";
    case ConicKind::Parabola: return "parabola";
    case ConicKind::Degenerate: return "degenerate";
    case ConicKind::Empty: return "empty";
  }
  return "unknown";
}

std::pair<Line, Line> series_chords(const Scene& scene, double angle) {
  const SeriesRun run = run_series(scene, scene.delta.at(angle), Direction::Ccw, 1);
  if (run.series.steps.size() < 2) throw Error(ErrorCode::SeriesBlocked, "series stops before its second chord");
  const auto& s = run.series.steps;
  return {Line::through(s[0].x, s[0].x_next), Line::through(s[1].x, s[1].x_next)};
}

namespace {

// u + w cos(t - psi), the restriction of a circle's power to delta up to scale.
struct TrigLinear {
  double u;
  double w;
  double psi;
};

// Circle whose power on delta is lambda * h.
Circle circle_from(const TrigLinear& h, double lambda, const Circle& delta) {
  const double r = delta.radius;
  const Point v = h.w * unit_vector(h.psi);
  const Point c = delta.center - (lambda / (2 * r)) * v;
  const double r2 = lambda * lambda * h.w * h.w / (4 * r * r) + r * r - lambda * h.u;
  if (!(r2 > 0)) throw Error(ErrorCode::NoRealPair, "candidate circle is imaginary");
  return Circle(c, std::sqrt(r2));
}

// Splits gamma on delta into two root-free linear factors.
std::vector<TrigLinear> split_on_delta(const Quadric& gamma, const Circle& delta) {
  const TrigQuadratic g = restrict_to_circle(gamma, delta);
  const double gs = g.max_abs_coefficient();
  if (gs <= 1e-12 * gamma.max_abs_coefficient() * std::max(1.0, delta.radius * delta.radius)) {
    throw Error(ErrorCode::NoRealPair, "gamma contains delta");
  }
  const auto poly = g.polynomial();
  std::vector<std::complex<double>> c(poly.begin(), poly.end());
  int lead = 0;
  while (lead < 2 && std::abs(c[lead]) <= 1e-13 * gs) ++lead;
  std::vector<std::complex<double>> inner(c.begin() + lead, c.end() - lead);
  std::vector<TrigLinear> out(lead, TrigLinear{1.0, 0.0, 0.0});
  std::vector<std::complex<double>> roots = polynomial_roots(inner);
  for (const auto& z : roots) {
    if (std::abs(std::abs(z) - 1.0) <= 1e-9) throw Error(ErrorCode::NoRealPair, "gamma meets delta");
  }
  std::vector<bool> used(roots.size(), false);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (used[i] || std::abs(roots[i]) > 1.0) continue;
    const std::complex<double> mirror = 1.0 / std::conj(roots[i]);
    std::size_t best = roots.size();
    for (std::size_t j = 0; j < roots.size(); ++j) {
      if (j == i || used[j]) continue;
      if (best == roots.size() || std::abs(roots[j] - mirror) < std::abs(roots[best] - mirror)) best = j;
    }
    if (best == roots.size()) throw Error(ErrorCode::NoRealPair, "unpaired root");
    used[i] = used[best] = true;
    const double s = std::abs(roots[i]);
    out.push_back({-(s + 1.0 / s) / 2.0, 1.0, std::arg(roots[i])});
  }
  if (out.size() != 2) throw Error(ErrorCode::NoRealPair, "restriction of gamma does not split into two factors");
  return out;
}

}  // namespace

CirclePair quadric_to_circle_pair(const Quadric& gamma, const Circle& delta) {
  const std::vector<TrigLinear> h = split_on_delta(gamma, delta);
  const double r = delta.radius;
  const Point probe = delta.at(0.3);
  std::optional<CirclePair> best;

  for (int assign = 0; assign < 2 && !best; ++assign) {
    const TrigLinear& h0 = h[assign];
    const TrigLinear& h1 = h[1 - assign];
    // alpha0 inside delta: lambda0 h0 > 0 and lambda0 below the point-circle limit.
    const double sign0 = h0.u > 0 ? 1.0 : -1.0;
    const double sign1 = h1.u > 0 ? -1.0 : 1.0;
    const double limit0 = 2 * r * r / (std::abs(h0.u) + std::sqrt(std::max(0.0, h0.u * h0.u - h0.w * h0.w)));
    const double scale1 = r * r / std::max(std::abs(h1.u), h1.w);
    for (double frac : {0.5, 0.3, 0.7, 0.15, 0.85, 0.05, 0.95}) {
      Circle a0;
      try {
        a0 = circle_from(h0, sign0 * frac * limit0, delta);
      } catch (const Error&) {
        continue;
      }
      auto residual = [&](double log_mu) {
        try {
          const Circle a1 = circle_from(h1, sign1 * scale1 * std::exp(log_mu), delta);
          const Scene s{a0, a1, delta, TangencyIndex(1), {}};
          if (!is_nested(s)) return std::numeric_limits<double>::quiet_NaN();
          const RestrictedDensity d(s.density(), delta, 1e-6);
          const SeriesStep st = first_step(s, probe, Direction::Ccw, d);
          return line_tangency_residual(gamma, Line::through(st.x, st.x_next));
        } catch (const Error&) {
          return std::numeric_limits<double>::quiet_NaN();
        }
      };
      double prev_x = -12.0, prev = residual(prev_x);
      for (int k = 1; k <= 192 && !best; ++k) {
        const double x = -12.0 + 24.0 * k / 192.0;
        const double v = residual(x);
        if (std::isfinite(prev) && std::isfinite(v) && (prev > 0) != (v > 0)) {
          double lo = prev_x, hi = x, flo = prev;
          for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fm = residual(mid);
            if (!std::isfinite(fm)) break;
            if ((fm > 0) == (flo > 0)) {
              lo = mid;
              flo = fm;
            } else {
              hi = mid;
            }
          }
          try {
            const Circle a1 = circle_from(h1, sign1 * scale1 * std::exp(0.5 * (lo + hi)), delta);
            const Scene s{a0, a1, delta, TangencyIndex(1), {}};
            const auto [c1, c2] = series_chords(s, 0.3);
            const PonceletQuadric pq = derive_poncelet_quadric(a0, a1, delta, c1, c2);
            const double rt = quadric_distance_up_to_scale(pq.gamma, gamma);
            if (rt <= 1e-8) best = CirclePair{a0, a1, pq.ap, rt};
          } catch (const Error&) {
          }
        }
        prev_x = x;
        prev = v;
      }
      if (best) break;
    }
  }
  if (!best) throw Error(ErrorCode::NoRealPair, "no nested pair found for gamma in the searched family");
  return *best;
}

}  // namespace emch
