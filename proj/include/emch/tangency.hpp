#pragma once

#include <vector>

#include "emch/geometry.hpp"

namespace emch {

/// Parity of the number of interior tangencies of a circle with the base pair.
class TangencyIndex {
 public:
  constexpr TangencyIndex() = default;
  explicit TangencyIndex(int value) : value_(value) {
    if (value != 0 && value != 1) throw Error(ErrorCode::InvalidArgument, "tangency index must be 0 or 1");
  }
  constexpr int value() const { return value_; }
  friend constexpr bool operator==(TangencyIndex, TangencyIndex) = default;

 private:
  int value_ = 0;
};

enum class Contact { Exterior, Interior };

/// The base pair and the index selecting the family M_i.
struct Family {
  Circle alpha0;
  Circle alpha1;
  TangencyIndex index;
};

/// Exterior or interior tangency of two circles; NotTangent otherwise.
Contact classify_contact(const Circle& a, const Circle& b, double tol);

/// Signed gap of the best tangency condition: |d - (r + r')| or |d - |r - r'||.
double tangency_residual(const Circle& a, const Circle& b);

struct TangentCircle {
  Circle circle;
  Point touch0;  // contact with alpha0
  Point touch1;  // contact with alpha1
  TangencyIndex index;
  bool boundary = false;  // the two family members through the point coincide
};

TangencyIndex classify_index(const Circle& omega, const Circle& alpha0, const Circle& alpha1, double tol);

Point tangency_point(const Circle& omega, const Circle& alpha, double tol);

/// Every real circle through `p` tangent to both base circles (at most four),
/// regardless of index.
std::vector<TangentCircle> all_tangent_circles_through_point(const Circle& alpha0, const Circle& alpha1,
                                                             Point p, double tol);

/// Members of the family M_i through `p`: generically two, one on the
/// envelope (flagged `boundary`). Throws PointOnBaseCircle or NoRealSolution.
std::vector<TangentCircle> tangent_circles_through_point(const Circle& alpha0, const Circle& alpha1,
                                                         Point p, TangencyIndex index, double tol);

/// A circle through two points tangent to a third circle.
struct TwoPointTangentCircle {
  Circle circle;
  Point touch;
  Contact contact;
};

/// Circles through p and q tangent to `alpha` (at most two).
std::vector<TwoPointTangentCircle> circles_through_points_tangent_to(Point p, Point q, const Circle& alpha,
                                                                     double tol);

}  // namespace emch
