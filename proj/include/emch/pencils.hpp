#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "emch/series.hpp"

namespace emch {

enum class MemberKind { RealCircle, PointCircle, Line, Empty };

struct PencilMember {
  MemberKind kind = MemberKind::RealCircle;
  double t = 0.0;
  Circle circle;      // RealCircle
  Point point;        // PointCircle
  Line line;          // Line (radical axis)
  Quadric quadric;    // (1 - t) f_a + t f_b, or f_b - f_a at infinity
};

/// Circles (1 - t) f_a + t f_b = 0; t = infinity gives f_b - f_a.
class Pencil {
 public:
  Pencil(const Circle& a, const Circle& b, double tol = 1e-9);

  const Circle& a() const { return a_; }
  const Circle& b() const { return b_; }

  /// Throws ImaginaryMember when the squared radius is below -tol.
  PencilMember member(double t) const;
  /// Squared radius of the finite member t.
  double squared_radius(double t) const;
  Point center(double t) const { return a_.center + t * (b_.center - a_.center); }
  Quadric quadric(double t) const;

 private:
  Circle a_, b_;
  double tol_;
};

struct TangentMember {
  double t;
  Contact contact;  // of the probe circle with the member
  Circle member;
};

/// Members of the pencil tangent to `probe`. The tangency condition
/// (f_t(g) - r^2)^2 = 4 r^2 s(t), with s the squared member radius, is a
/// quadratic in t and is solved in closed form; only real circles are kept.
std::vector<TangentMember> tangent_members(const Pencil& pencil, const Circle& probe);

/// Pairs drawn from the pencils {delta, alpha0} and {delta, alpha1}.
struct PairSequence {
  Circle delta;
  Circle alpha0;
  Circle alpha1;
  std::vector<double> t0;
  std::vector<double> t1;

  std::size_t size() const { return t0.size(); }
  /// Throws DegeneratePair for t = 0 and ImaginaryMember for non-real members.
  std::pair<Circle, Circle> pair(std::size_t k) const;
};

struct Prop3Report {
  std::vector<double> constants;   // mean of rho_k / rho_1 on delta
  std::vector<double> predicted;   // 1 / sqrt|t0k t1k / (t01 t11)|
  double spread = 0.0;             // worst relative spread of a ratio along delta
  double prediction_error = 0.0;   // worst relative gap between measured and predicted constants
};

Prop3Report verify_prop3(const PairSequence& pairs, int samples);

struct GeneralizedReport {
  bool closed = false;
  int n = 0;        // circles before the return
  int winding = 0;  // full turns of delta angle
  double residual = 0.0;
  StopReason stop = StopReason::MaxSteps;
  std::string message;
  std::vector<TangentCircle> circles;
  std::vector<Point> points;
};

/// omega_k touches pair order[(k - 1) mod m] with the given index and leaves
/// x_k in the travel direction. Closure is tested after each full cycle.
GeneralizedReport run_generalized_series(const std::vector<std::pair<Circle, Circle>>& pairs, const Circle& delta,
                                         TangencyIndex index, Point x1, const std::vector<int>& order,
                                         int max_cycles, const Tolerances& tol = {});

struct FixedMember {
  double t = 0.0;
  double spread = 0.0;  // max - min of the fitted parameters, relative to 1 + |t|
  PencilMember member;
  std::vector<double> fitted;
};

/// Fits the member of pencil {delta, alpha1} touched by every circle through
/// the given point pairs that is tangent to alpha0. Candidates are kept when
/// all pairs agree; members equal to alpha0 are skipped. Sorted by spread.
/// Throws NoTangentMember.
std::vector<FixedMember> common_tangent_member(const std::vector<std::pair<Point, Point>>& chords,
                                               const Circle& alpha0, const Pencil& pencil,
                                               std::optional<TangencyIndex> index, double tol = 1e-9);

/// Diagonals x_k x_{k+r} of a series.
std::vector<FixedMember> diagonal_fixed_circle(const CircularSeries& series, int r,
                                               std::optional<TangencyIndex> index = std::nullopt);

/// Circles cutting the arc mass `mass` from `starts` (chords x -> x + mass)
/// and tangent to alpha0: the fitted member of {delta, alpha1}.
std::vector<FixedMember> fixed_mass_member(const Scene& scene, const std::vector<double>& start_angles, double mass,
                                           std::optional<TangencyIndex> index = std::nullopt);

/// Chords joining corresponding points of two series.
std::vector<FixedMember> parallel_series_member(const CircularSeries& a, const CircularSeries& b,
                                                std::optional<TangencyIndex> index = std::nullopt);

}  // namespace emch
