#pragma once

#include <optional>
#include <vector>

#include "emch/cyclic.hpp"
#include "emch/series.hpp"

namespace emch {

/// p = x1^2 + x2^2 + l_p(x) + A_p together with q = F - p f_delta.
struct EquivalenceWitness {
  Point lp;          // linear part of p, l_p = l - l_delta
  double ap = 0.0;   // constant term of p
  double mu = 1.0;   // F = mu q on delta
  Quadric q;
};

/// Quadrics q(A) = q0 - A f_delta; every finite member agrees with F / mu
/// on delta, and the member at infinity is delta itself.
class QuadricPencil {
 public:
  QuadricPencil(const Cyclic& f, const Circle& delta);

  const Quadric& base() const { return q0_; }
  const Circle& delta() const { return delta_; }
  double mu() const { return mu_; }
  Point lp() const { return lp_; }
  /// A = infinity returns the quadric of delta.
  Quadric member(double a) const;
  EquivalenceWitness witness(double a) const;

 private:
  Quadric q0_;
  Circle delta_;
  Point lp_;
  double mu_ = 1.0;
};

QuadricPencil equivalent_pencil(const Cyclic& f, const Circle& delta);

/// Max relative spread of F / q over samples of delta.
double equivalence_spread(const Cyclic& f, const Quadric& q, const Circle& delta, int samples);

/// Throws NotDoublyTangent unless F vanishes at t0, t1 on omega with
/// gradients along omega's normals (relative tolerance `tol`).
void check_double_tangency(const Cyclic& f, const Circle& omega, Point t0, Point t1, double tol = 1e-8);

/// F / h^2 on omega, h the distance to the line t0 t1.
SpreadReport verify_prop1_prime(const Cyclic& f, const Circle& omega, Point t0, Point t1, int samples);

struct DoubleLineReport {
  double a = 0.0;         // member of the pencil of F and omega
  double scale = 0.0;     // member = scale * L^2
  double residual = 0.0;  // relative coefficient mismatch
  Quadric member;
};

/// The member of equivalent_pencil(F, omega) that is the double line t0 t1.
DoubleLineReport double_line_member(const Cyclic& f, const Circle& omega, Point t0, Point t1);

/// Candidate A_p values whose member of the pencil of f0 f1 and delta is
/// tangent to the chord. Members with a constant restriction are dropped.
std::vector<double> poncelet_ap_candidates(const Circle& alpha0, const Circle& alpha1, const Circle& delta,
                                           const Line& chord);

struct PonceletQuadric {
  double ap = 0.0;
  Quadric gamma;
  EquivalenceWitness witness;
};

/// Throws NoRealAp, or AmbiguousAp when several candidates remain and no
/// second chord is given (the second chord picks the consistent one).
PonceletQuadric derive_poncelet_quadric(const Circle& alpha0, const Circle& alpha1, const Circle& delta,
                                        const Line& chord, std::optional<Line> second = std::nullopt);

enum class ConicKind { Circle, Ellipse, Hyperbola, Parabola, Degenerate, Empty };

ConicKind classify_conic(const Quadric& q, double tol = 1e-12);
const char* to_string(ConicKind k);

struct CirclePair {
  Circle alpha0;
  Circle alpha1;
  double ap = 0.0;
  double roundtrip = 0.0;  // quadric_distance_up_to_scale of the reconstructed gamma
};

/// A nested pair (alpha0 inside delta inside alpha1) whose Emch chords are
/// tangent to gamma. Throws NoRealPair when the search finds none.
CirclePair quadric_to_circle_pair(const Quadric& gamma, const Circle& delta);

/// Two chords of a nested scene's series used to seed and check gamma.
std::pair<Line, Line> series_chords(const Scene& scene, double angle = 0.3);

}  // namespace emch
