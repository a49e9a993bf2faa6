#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "emch/cyclic.hpp"
#include "emch/geometry.hpp"
#include "emch/quadrature.hpp"
#include "emch/tangency.hpp"

namespace emch {

enum class DensityKind {
  CirclePair,       // 1 / sqrt|f0 f1|
  SingleCircle,     // 1 / sqrt|f0|
  Cyclic,           // 1 / sqrt|F|
  ReciprocalPower,  // 1 / |f0|
};

/// A density on the plane generated by circles or a cyclic.
struct PairDensity {
  DensityKind kind = DensityKind::CirclePair;
  Circle alpha0;
  Circle alpha1;
  emch::Cyclic cyclic;

  static PairDensity pair(const Circle& a0, const Circle& a1);
  static PairDensity single(const Circle& a0);
  static PairDensity of_cyclic(const emch::Cyclic& f);
  static PairDensity reciprocal_power(const Circle& a0);
};

/// Density at p; +infinity where the generating polynomial vanishes.
double rho(const PairDensity& d, Point p);

enum class Direction { Ccw, Cw };

struct ArcMass {
  double value = 0.0;
  double total = 0.0;
  double error = 0.0;
};

/// A density restricted to a circle delta, parametrized by angle. The zeros
/// of every factor on delta are located in closed form (or by polynomial
/// roots for a cyclic) and quadrature panels are split there.
class RestrictedDensity {
 public:
  RestrictedDensity(const PairDensity& density, const Circle& delta, double quad_tol = 1e-10);

  const Circle& delta() const { return delta_; }
  /// rho(delta.at(theta)); infinite at the singular angles.
  double at(double theta) const;
  /// Angles in [0, 2 pi) where the density blows up.
  const std::vector<double>& singular_angles() const { return singular_; }
  /// Mass of the ccw arc from `theta` through `sweep` >= 0 radians.
  QuadratureResult mass(double theta, double sweep) const;
  /// Total mass m(delta), computed once.
  double total() const;
  /// The angle reached from `theta` after a ccw arc of the given mass.
  double angle_at_mass(double theta, double mass) const;

  struct Factor {
    double scale = 1.0;                     // |g| = scale * prod |e^{it} - z_k|
    std::vector<std::complex<double>> off;  // roots off the unit circle
    std::vector<int> unit;                  // indices into the root table
    double exponent = 0.5;
  };

 private:
  struct Root {
    double theta;
    double exponent;  // accumulated over factors
  };
  double integrand(double theta, int left_root, double left_offset, int right_root,
                   double right_offset) const;
  QuadratureResult panel(double a, double b, int left_root, int right_root, double tol) const;

  Circle delta_;
  double quad_tol_;
  std::vector<Factor> factors_;
  std::vector<Root> roots_;
  std::vector<double> singular_;
  mutable std::optional<QuadratureResult> total_;
};

/// Mass of the arc of delta from `from` to `to` in the given direction.
ArcMass arc_mass(const PairDensity& d, const Circle& delta, Point from, Point to, Direction dir,
                 const Tolerances& tol = {});

double total_mass(const PairDensity& d, const Circle& delta, const Tolerances& tol = {});

/// Concentric base pair with the mid circle of the Zigzag construction.
struct ZigzagConfig {
  Circle alpha0;
  Circle alpha1;

  ZigzagConfig(const Circle& a0, const Circle& a1, double tol = 1e-9);
  Circle mid() const;
  double jump() const;
};

/// 1 / (2 area) of the triangle with sides |p - c|, mid radius and jump,
/// by a cancellation-free Heron formula.
double black_howland(const ZigzagConfig& z, Point p);

/// The same value through an explicit witness z on the mid circle with
/// |p - z| = jump: 1 / |(z - c) x (p - c)|.
struct ZigzagWitness {
  Point z;
  double value;
};
ZigzagWitness black_howland_witness(const ZigzagConfig& z, Point p);

/// Deterministic sample points on a circle.
std::vector<Point> sample_circle(const Circle& c, int count, double phase = 0.1234);

struct SpreadReport {
  double mean = 0.0;
  double max_deviation = 0.0;  // max relative deviation from the mean
  int used = 0;
  int skipped = 0;
};

/// rho * h on omega, h the distance to the line through the touch points.
SpreadReport verify_prop1(const TangentCircle& omega, const PairDensity& d, int samples);

/// rho * |f0| along delta; constant when delta lies in the pencil of the pair.
SpreadReport steiner_spread(const Circle& alpha0, const Circle& alpha1, const Circle& delta, int samples);

struct InvarianceReport {
  bool skipped = false;
  Point x, y;
  double dx = 0.0;  // arc displacement at x
  double dy = 0.0;  // arc displacement at y
  double residual = 0.0;
};

/// Moves x (first intersection of omega with delta) by `eps` of arc length,
/// rebuilds the neighbouring family member and compares rho|dx| with rho|dy|.
InvarianceReport verify_invariance(const PairDensity& d, const Family& family, const Circle& delta,
                                   const TangentCircle& omega, double eps, const Tolerances& tol = {});

struct HalvingCheck {
  double at_eps = 0.0;
  double at_half = 0.0;
  double ratio = 0.0;
  bool pass = false;
};

/// First-order residuals should halve with the perturbation. Residuals
/// already at rounding level pass as well.
HalvingCheck halving_check(double at_eps, double at_half, double floor = 1e-9);

struct LimitRow {
  double r1;
  double deviation;
};
struct LimitReport {
  std::vector<LimitRow> rows;
  bool decreasing = true;
};

/// max over delta of |r1 rho - 1/sqrt|f0|| for alpha1 = Circle(center1, r1).
LimitReport jacobi_bertrand_limit_check(const Circle& alpha0, const Circle& delta, Point center1,
                                        const std::vector<double>& r1_sequence, int samples = 720);

}  // namespace emch
