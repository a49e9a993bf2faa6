#pragma once

#include <functional>

namespace emch {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
};

/// Globally adaptive 7/15-point Gauss-Kronrod on [a, b]. The interval with
/// the largest |K15 - G7| is bisected until the summed estimate is below
/// `abs_tol`. Throws QuadratureFailure when `max_intervals` is exhausted or
/// the integrand is not finite.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol, int max_intervals = 4000);

}  // namespace emch
