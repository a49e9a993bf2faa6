#include "emch/cyclic.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

namespace emch {

Cyclic Cyclic::product(const Circle& a0, const Circle& a1) {
  // (s + l0 + B0)(s + l1 + B1) = s^2 + s (l0 + l1) + s (B0 + B1) + (l0 + B0)(l1 + B1)
  const Point l0 = a0.linear(), l1 = a1.linear();
  const double b0 = a0.constant(), b1 = a1.constant();
  Cyclic f;
  f.lambda = 1.0;
  f.linear = l0 + l1;
  f.quadratic = {b0 + b1 + l0.x * l1.x,
                 0.5 * (l0.x * l1.y + l0.y * l1.x),
                 b0 + b1 + l0.y * l1.y,
                 l0.x * b1 + l1.x * b0,
                 l0.y * b1 + l1.y * b0,
                 b0 * b1};
  return f;
}

Point Cyclic::gradient(Point p) const {
  const double s = norm2(p);
  const double lin = dot(linear, p);
  return 4.0 * lambda * s * p + 2.0 * lin * p + s * linear + quadratic.gradient(p);
}

Quadric reduce_on_circle(const Cyclic& f, const Circle& delta) {
  const Point ld = delta.linear();
  const double ad = delta.constant();
  const Point lp = f.linear - f.lambda * ld;
  // Q - lambda A_delta s - l_p l_delta - A_delta l_p
  Quadric q = f.quadratic;
  q.a11 -= f.lambda * ad + lp.x * ld.x;
  q.a12 -= 0.5 * (lp.x * ld.y + lp.y * ld.x);
  q.a22 -= f.lambda * ad + lp.y * ld.y;
  q.b1 -= ad * lp.x;
  q.b2 -= ad * lp.y;
  return q;
}

double TrigQuadratic::max_abs_coefficient() const {
  return std::max({std::abs(a0), std::abs(a1), std::abs(b1), std::abs(a2), std::abs(b2)});
}

std::array<std::complex<double>, 5> TrigQuadratic::polynomial() const {
  using C = std::complex<double>;
  return {C(a2, -b2) / 2.0, C(a1, -b1) / 2.0, C(a0, 0.0), C(a1, b1) / 2.0, C(a2, b2) / 2.0};
}

TrigQuadratic restrict_to_circle(const Quadric& q, const Circle& circle) {
  const double r = circle.radius;
  const Point g = q.gradient(circle.center);
  TrigQuadratic t;
  t.a0 = q(circle.center) + r * r * (q.a11 + q.a22) / 2.0;
  t.a1 = r * g.x;
  t.b1 = r * g.y;
  t.a2 = r * r * (q.a11 - q.a22) / 2.0;
  t.b2 = r * r * q.a12;
  return t;
}

std::vector<std::complex<double>> polynomial_roots(std::vector<std::complex<double>> coeffs) {
  using C = std::complex<double>;
  double scale = 0.0;
  for (const C& c : coeffs) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) return {};
  while (!coeffs.empty() && std::abs(coeffs.front()) <= 1e-14 * scale) coeffs.erase(coeffs.begin());
  const int n = static_cast<int>(coeffs.size()) - 1;
  if (n < 1) return {};
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  for (int j = 0; j < n; ++j) companion(0, j) = -coeffs[j + 1] / coeffs[0];
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  std::vector<C> roots(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  for (C& z : roots) {
    for (int it = 0; it < 4; ++it) {
      C p = coeffs[0], dp = 0.0;
      for (int k = 1; k <= n; ++k) {
        dp = dp * z + p;
        p = p * z + coeffs[k];
      }
      if (std::abs(dp) == 0.0) break;
      const C step = p / dp;
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
      z -= step;
      if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(z))) break;
    }
  }
  return roots;
}

std::vector<double> real_quadratic_roots(double a, double b, double c) {
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
  if (scale == 0.0) return {};
  a /= scale;
  b /= scale;
  c /= scale;
  if (std::abs(a) <= 1e-14) {
    if (std::abs(b) <= 1e-14) return {};
    return {-c / b};
  }
  double disc = b * b - 4 * a * c;
  if (disc < 0) {
    if (disc < -1e-13 * std::max(b * b, std::abs(4 * a * c))) return {};
    disc = 0;
  }
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  if (q == 0.0) return {0.0};
  return {q / a, c / q};
}

std::vector<TrigRoot> trig_roots(const TrigQuadratic& g) {
  const auto poly = g.polynomial();
  std::vector<double> thetas;
  for (const auto& z : polynomial_roots({poly.begin(), poly.end()})) {
    if (std::abs(std::abs(z) - 1.0) > 1e-5) continue;
    double t = std::arg(z);
    if (t < 0) t += 2.0 * std::numbers::pi;
    thetas.push_back(t);
  }
  std::sort(thetas.begin(), thetas.end());
  std::vector<TrigRoot> roots;
  const double two_pi = 2.0 * std::numbers::pi;
  for (double t : thetas) {
    if (!roots.empty() && std::abs(t - roots.back().theta) < 1e-6) {
      roots.back().simple = false;
      continue;
    }
    roots.push_back({t, true});
  }
  if (roots.size() > 1 && std::abs(roots.front().theta + two_pi - roots.back().theta) < 1e-6) {
    roots.front().simple = false;
    roots.pop_back();
  }
  for (TrigRoot& r : roots) {
    if (!r.simple) continue;
    for (int it = 0; it < 6; ++it) {
      const double d = g.derivative(r.theta);
      if (d == 0.0) break;
      const double step = g(r.theta) / d;
      r.theta -= step;
      if (std::abs(step) < 1e-17) break;
    }
    r.theta = std::fmod(r.theta + two_pi, two_pi);
  }
  std::sort(roots.begin(), roots.end(), [](const TrigRoot& a, const TrigRoot& b) { return a.theta < b.theta; });
  return roots;
}

}  // namespace emch
