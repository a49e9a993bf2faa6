#pragma once

#include <array>
#include <complex>
#include <vector>

#include "emch/geometry.hpp"

namespace emch {

/// Plane quartic lambda (x1^2 + x2^2)^2 + (x1^2 + x2^2) l(x) + Q(x).
struct Cyclic {
  double lambda = 1.0;
  Point linear;  // coefficients of l
  Quadric quadratic;

  /// f0 * f1 for the powers of two circles.
  static Cyclic product(const Circle& a0, const Circle& a1);

  double operator()(Point p) const {
    const double s = norm2(p);
    return lambda * s * s + s * dot(linear, p) + quadratic(p);
  }
  Point gradient(Point p) const;
  bool is_zero() const { return lambda == 0.0 && linear == Point{} && quadratic.is_zero(); }
};

/// The quadric F - p0 f_delta, with p0 = lambda s + (l - lambda l_delta) the
/// unique multiplier that cancels the quartic and cubic terms. It agrees
/// with F everywhere on `delta`.
Quadric reduce_on_circle(const Cyclic& f, const Circle& delta);

/// g(theta) = a0 + a1 cos t + b1 sin t + a2 cos 2t + b2 sin 2t.
struct TrigQuadratic {
  double a0 = 0, a1 = 0, b1 = 0, a2 = 0, b2 = 0;

  double operator()(double t) const {
    return a0 + a1 * std::cos(t) + b1 * std::sin(t) + a2 * std::cos(2 * t) + b2 * std::sin(2 * t);
  }
  double derivative(double t) const {
    return -a1 * std::sin(t) + b1 * std::cos(t) - 2 * a2 * std::sin(2 * t) + 2 * b2 * std::cos(2 * t);
  }
  double max_abs_coefficient() const;
  /// z^2 g as a polynomial in z = e^{it}; coefficients of z^4 .. z^0.
  std::array<std::complex<double>, 5> polynomial() const;
};

/// Exact expansion of q(c + R e(theta)).
TrigQuadratic restrict_to_circle(const Quadric& q, const Circle& circle);

/// Roots of sum_k coeffs[k] z^(n-k) (highest degree first), via the
/// companion matrix with Newton polishing. Leading zeros are stripped.
std::vector<std::complex<double>> polynomial_roots(std::vector<std::complex<double>> coeffs);

/// Real roots of a t^2 + b t + c after scaling to unit max coefficient;
/// a vanishing leading term leaves the linear root.
std::vector<double> real_quadratic_roots(double a, double b, double c);

struct TrigRoot {
  double theta;
  bool simple;  // false for a double root (tangency)
};

/// Real roots of g in [0, 2 pi), sorted.
std::vector<TrigRoot> trig_roots(const TrigQuadratic& g);

}  // namespace emch
