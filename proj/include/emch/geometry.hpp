#pragma once

#include <array>
#include <cmath>
#include <variant>
#include <vector>

#include "emch/error.hpp"

namespace emch {

/// Numeric tolerances shared by every module.
struct Tolerances {
  double geo = 1e-9;     // tangency / coincidence classification, length units
  double quad = 1e-10;   // absolute quadrature tolerance for arc masses
  double close = 1e-8;   // series closure match
};

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator-(Point a) { return {-a.x, -a.y}; }
  friend Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
  friend Point operator*(Point a, double s) { return {s * a.x, s * a.y}; }
  friend Point operator/(Point a, double s) { return {a.x / s, a.y / s}; }
  friend bool operator==(Point a, Point b) = default;
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double norm2(Point a) { return dot(a, a); }
inline double distance(Point a, Point b) { return norm(a - b); }
inline Point perp(Point a) { return {-a.y, a.x}; }
inline Point unit_vector(double theta) { return {std::cos(theta), std::sin(theta)}; }

/// Circle stored as center/radius. The power coefficients
/// f(x) = |x|^2 + linear . x + constant are derived on demand.
struct Circle {
  Point center;
  double radius = 1.0;

  Circle() = default;
  Circle(Point c, double r);

  /// Coefficients of the linear form: -2 c.
  Point linear() const { return -2.0 * center; }
  /// Constant term: |c|^2 - r^2.
  double constant() const { return norm2(center) - radius * radius; }
  Point at(double theta) const { return center + radius * unit_vector(theta); }
  double angle_of(Point p) const { return std::atan2(p.y - center.y, p.x - center.x); }
};

/// Line n.x = offset with |n| = 1.
struct Line {
  Point normal{1.0, 0.0};
  double offset = 0.0;

  Line() = default;
  Line(Point n, double d);

  static Line through(Point a, Point b);
  double signed_distance(Point p) const { return dot(normal, p) - offset; }
  Point foot() const { return offset * normal; }
  Point direction() const { return perp(normal); }
};

/// a11 x^2 + 2 a12 x y + a22 y^2 + b1 x + b2 y + c.
struct Quadric {
  double a11 = 0, a12 = 0, a22 = 0, b1 = 0, b2 = 0, c = 0;

  static Quadric from_circle(const Circle& circle);
  static Quadric from_line_squared(const Line& line);

  double operator()(Point p) const {
    return a11 * p.x * p.x + 2.0 * a12 * p.x * p.y + a22 * p.y * p.y + b1 * p.x + b2 * p.y + c;
  }
  Point gradient(Point p) const {
    return {2.0 * a11 * p.x + 2.0 * a12 * p.y + b1, 2.0 * a12 * p.x + 2.0 * a22 * p.y + b2};
  }
  std::array<double, 6> coefficients() const { return {a11, a12, a22, b1, b2, c}; }
  static Quadric from_coefficients(const std::array<double, 6>& k);
  double max_abs_coefficient() const;
  bool is_zero() const { return max_abs_coefficient() == 0.0; }
  /// Determinant of the symmetric 3x3 matrix of the conic.
  double determinant() const;

  friend Quadric operator+(const Quadric& a, const Quadric& b);
  friend Quadric operator-(const Quadric& a, const Quadric& b);
  friend Quadric operator*(double s, const Quadric& q);
};

/// Largest coefficient difference after scaling both quadrics to unit norm
/// and aligning signs; 0 when they describe the same conic.
double quadric_distance_up_to_scale(const Quadric& a, const Quadric& b);

struct Inversion {
  Point center;
  double power = 1.0;

  Inversion() = default;
  Inversion(Point c, double k);

  Point apply(Point p) const;
};

using CircleOrLine = std::variant<Circle, Line>;

double power(const Circle& c, Point p);

std::vector<Point> circle_circle_intersection(const Circle& a, const Circle& b, double tol = 1e-9);
std::vector<Point> line_circle_intersection(const Line& l, const Circle& c, double tol = 1e-9);

/// Sign of (b - a) x (c - a): +1, -1, or 0 for exactly collinear triples.
int orientation(Point a, Point b, Point c);

CircleOrLine invert_circle(const Inversion& inv, const Circle& c, double tol = 1e-9);
CircleOrLine invert_line(const Inversion& inv, const Line& l, double tol = 1e-9);

double quadric_eval(const Quadric& q, Point p);

/// Discriminant of q restricted to l (after scaling q to unit max
/// coefficient): zero iff tangent, positive for secants.
double line_tangency_residual(const Quadric& q, const Line& l);

/// Coefficients (a, b, c) of s -> q(foot + s * direction).
std::array<double, 3> restrict_to_line(const Quadric& q, const Line& l);

/// Center/radius distance used to compare circles.
double circle_distance(const Circle& a, const Circle& b);

}  // namespace emch
