#include "emch/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "emch/error.hpp"

namespace emch {
namespace {

constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrod = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7).
constexpr std::array<double, 4> kGauss = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
};

Panel gk15(const std::function<double(double)>& f, double a, double b, int& evals) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double kronrod = kKronrod[7] * f(mid);
  double gauss = kGauss[3] * f(mid);
  evals += 15;
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kNodes[i];
    const double s = f(mid - dx) + f(mid + dx);
    kronrod += kKronrod[i] * s;
    if (i % 2 == 1) gauss += kGauss[i / 2] * s;
  }
  kronrod *= half;
  gauss *= half;
  if (!std::isfinite(kronrod)) throw Error(ErrorCode::QuadratureFailure, "integrand is not finite");
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol, int max_intervals) {
  QuadratureResult result;
  if (a == b) return result;
  std::vector<Panel> panels{gk15(f, a, b, result.evaluations)};
  auto total_error = [&] {
    double e = 0.0;
    for (const Panel& p : panels) e += p.error;
    return e;
  };
  while (total_error() > abs_tol) {
    if (static_cast<int>(panels.size()) >= max_intervals) {
      throw Error(ErrorCode::QuadratureFailure,
                  "no convergence after " + std::to_string(max_intervals) + " intervals");
    }
    auto worst = std::max_element(panels.begin(), panels.end(),
                                  [](const Panel& x, const Panel& y) { return x.error < y.error; });
    const double lo = worst->a, hi = worst->b, mid = 0.5 * (lo + hi);
    if (!(mid > std::min(lo, hi) && mid < std::max(lo, hi))) {
      throw Error(ErrorCode::QuadratureFailure, "interval cannot be refined further");
    }
    *worst = gk15(f, lo, mid, result.evaluations);
    panels.push_back(gk15(f, mid, hi, result.evaluations));
  }
  std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  for (const Panel& p : panels) {
    result.value += p.value;
    result.error += p.error;
  }
  return result;
}

}  // namespace emch
