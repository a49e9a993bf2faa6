#pragma once

#include <optional>
#include <string>
#include <vector>

#include "emch/measure.hpp"
#include "emch/tangency.hpp"

namespace emch {

struct Scene {
  Circle alpha0;
  Circle alpha1;
  Circle delta;
  TangencyIndex index;
  Tolerances tol;

  Family family() const { return {alpha0, alpha1, index}; }
  PairDensity density() const { return PairDensity::pair(alpha0, alpha1); }
};

/// alpha0 inside delta inside alpha1, strictly.
bool is_nested(const Scene& scene);

struct SeriesStep {
  TangentCircle omega;
  Point x;       // x_k, shared with the previous circle
  Point x_next;  // x_{k+1}, the other intersection with delta
  int sign = 1;  // +1 when the arc of delta inside omega runs x -> x_next in the travel direction
  double mass = 0.0;  // unsigned mass of that arc
};

struct CircularSeries {
  Scene scene;
  Direction direction = Direction::Ccw;
  std::vector<SeriesStep> steps;
};

enum class StopReason { MaxSteps, Closed, Blocked };

struct ClosureReport {
  bool closed = false;
  int n = 0;
  int winding = 0;
  double residual = 0.0;     // circle distance between omega_{n+1} and omega_1 (best return when open)
  double mass_sum = 0.0;     // signed masses of steps 1..n
  double total = 0.0;        // m(delta)
  double quantization = 0.0; // |mass_sum - winding * total|
  StopReason stop = StopReason::MaxSteps;
  std::string message;
};

/// First circle of a series through a point of delta: the family member whose
/// inner arc of delta leaves `x` in the travel direction.
SeriesStep first_step(const Scene& scene, Point x, Direction dir, const RestrictedDensity& density);

/// First step from a given circle; it must belong to the scene's family.
SeriesStep first_step(const Scene& scene, const Circle& omega, Direction dir, const RestrictedDensity& density);

/// Appends omega_{k+1}. Throws SeriesBlocked.
void next_step(CircularSeries& series, const RestrictedDensity& density);

struct SeriesRun {
  CircularSeries series;
  ClosureReport report;
};

/// Iterates next_step up to `max_steps` times after the first circle and
/// stops at the first return to omega_1 and x_1.
SeriesRun run_series(const Scene& scene, const SeriesStep& first, Direction dir, int max_steps);
SeriesRun run_series(const Scene& scene, Point x1, Direction dir, int max_steps);

struct RotationReport {
  double value = 0.0;      // step mass / m(delta)
  double step_mass = 0.0;
  double total = 0.0;
  double step_spread = 0.0;  // max relative deviation of the step masses from the first
};

/// Throws NotNested.
RotationReport rotation_number(const Scene& scene, Point x1, int steps);

struct SignedInvariantReport {
  std::vector<double> signed_values;    // tau * rho * dx
  std::vector<double> untwisted_values; // rho * dx without the orientation factor
  double spread = 0.0;                  // of signed_values
  double untwisted_spread = 0.0;
  bool direction_changes = false;       // some dx_k has the opposite sign of dx_1
};

/// Moves x_1 by a signed arc `eps` and rebuilds the series with the same
/// number of steps. Throws AssumptionViolated unless omega_1 lies inside alpha1.
SignedInvariantReport signed_invariant_check(const CircularSeries& series, double eps);

/// Orientation of (x_k, t0, t1) for the k-th step.
int step_orientation(const SeriesStep& step);

struct PairedTangentCase {
  TangentCircle omega;
  TangentCircle nu;
  int tau_omega;
  int tau_nu;
};

/// Pairs of circles through m touching each base circle with matching
/// contact types, with the two orientations to compare.
std::vector<PairedTangentCase> paired_tangent_cases(const Circle& alpha0, const Circle& alpha1, Point m, double tol);

struct Normalization {
  bool identity = true;
  Inversion inversion;
  Scene scene;
  TangentCircle omega;
};

/// An inversion after which omega lies inside alpha1. Throws
/// NotTangentConfiguration or NormalizationFailed.
Normalization normalize_assumption1(const Scene& scene, const TangentCircle& omega);

/// Same direction rule as the series uses, on the arc from a to b.
bool ccw_arc_inside(const Circle& omega, const Circle& delta, Point a, Point b);

}  // namespace emch
