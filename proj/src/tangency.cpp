#include "emch/tangency.hpp"

#include <algorithm>
#include <cmath>

namespace emch {
namespace {

struct ContactFit {
  Contact contact;
  double residual;
};

ContactFit best_contact(const Circle& a, const Circle& b) {
  const double d = distance(a.center, b.center);
  const double ext = std::abs(d - (a.radius + b.radius));
  const double in = std::abs(d - std::abs(a.radius - b.radius));
  return ext <= in ? ContactFit{Contact::Exterior, ext} : ContactFit{Contact::Interior, in};
}

// Lines tangent to both circles; n.c_j - d = sigma_j r_j with sigma_0 = +1.
std::vector<Line> common_tangent_lines(const Circle& c0, const Circle& c1) {
  std::vector<Line> lines;
  const Point delta = c0.center - c1.center;
  const double len2 = norm2(delta);
  if (len2 == 0.0) return lines;
  for (double sigma1 : {1.0, -1.0}) {
    const double rhs = c0.radius - sigma1 * c1.radius;
    double disc = len2 - rhs * rhs;
    if (disc < -1e-12 * len2) continue;
    disc = std::max(disc, 0.0);
    const double root = std::sqrt(disc);
    for (double s : {1.0, -1.0}) {
      const Point n = (rhs * delta + s * root * perp(delta)) / len2;
      lines.emplace_back(n, dot(n, c0.center) - c0.radius);
      if (root == 0.0) break;
    }
  }
  return lines;
}

Point project(const Line& l, Point p) { return p - l.signed_distance(p) * l.normal; }

}  // namespace

double tangency_residual(const Circle& a, const Circle& b) { return best_contact(a, b).residual; }

Contact classify_contact(const Circle& a, const Circle& b, double tol) {
  const double d = distance(a.center, b.center);
  if (d <= tol) throw Error(ErrorCode::NotTangent, "concentric circles cannot be tangent");
  const bool ext = std::abs(d - (a.radius + b.radius)) <= tol;
  const bool in = std::abs(d - std::abs(a.radius - b.radius)) <= tol;
  if (ext && in) throw Error(ErrorCode::NotTangent, "tangency type is ambiguous");
  if (ext) return Contact::Exterior;
  if (in) return Contact::Interior;
  throw Error(ErrorCode::NotTangent, "circles are not tangent");
}

TangencyIndex classify_index(const Circle& omega, const Circle& alpha0, const Circle& alpha1, double tol) {
  const int interior = (classify_contact(omega, alpha0, tol) == Contact::Interior) +
                       (classify_contact(omega, alpha1, tol) == Contact::Interior);
  return TangencyIndex(interior % 2);
}

Point tangency_point(const Circle& omega, const Circle& alpha, double tol) {
  const double ro = omega.radius, ra = alpha.radius;
  if (classify_contact(omega, alpha, tol) == Contact::Exterior) {
    return (ra * omega.center + ro * alpha.center) / (ro + ra);
  }
  // Interior contact sits at the external center of similitude.
  return (ra * omega.center - ro * alpha.center) / (ra - ro);
}

std::vector<TangentCircle> all_tangent_circles_through_point(const Circle& alpha0, const Circle& alpha1,
                                                             Point p, double tol) {
  if (circle_distance(alpha0, alpha1) <= tol) {
    throw Error(ErrorCode::CoincidentCircles, "base circles coincide");
  }
  for (const Circle* a : {&alpha0, &alpha1}) {
    if (std::abs(distance(p, a->center) - a->radius) <= tol) {
      throw Error(ErrorCode::PointOnBaseCircle, "point lies on a base circle");
    }
  }
  const double k = std::sqrt(std::abs(power(alpha0, p) * power(alpha1, p)));
  const Inversion inv(p, k);
  const Circle beta0 = std::get<Circle>(invert_circle(inv, alpha0, 0.0));
  const Circle beta1 = std::get<Circle>(invert_circle(inv, alpha1, 0.0));
  const double scale = std::max({beta0.radius, beta1.radius, norm(beta0.center - p), norm(beta1.center - p)});

  std::vector<TangentCircle> out;
  for (const Line& line : common_tangent_lines(beta0, beta1)) {
    // A tangent line through p is the image of a line, not of a circle.
    if (std::abs(line.signed_distance(p)) <= 1e-12 * scale) continue;
    const Circle omega = std::get<Circle>(invert_line(inv, line, 0.0));
    TangentCircle tc;
    tc.circle = omega;
    tc.touch0 = inv.apply(project(line, beta0.center));
    tc.touch1 = inv.apply(project(line, beta1.center));
    const ContactFit f0 = best_contact(omega, alpha0);
    const ContactFit f1 = best_contact(omega, alpha1);
    if (f0.residual > tol || f1.residual > tol) continue;
    tc.index = TangencyIndex(((f0.contact == Contact::Interior) + (f1.contact == Contact::Interior)) % 2);
    out.push_back(tc);
  }
  return out;
}

std::vector<TangentCircle> tangent_circles_through_point(const Circle& alpha0, const Circle& alpha1,
                                                         Point p, TangencyIndex index, double tol) {
  std::vector<TangentCircle> out;
  for (const TangentCircle& tc : all_tangent_circles_through_point(alpha0, alpha1, p, tol)) {
    if (tc.index != index) continue;
    auto dup = std::find_if(out.begin(), out.end(), [&](const TangentCircle& o) {
      return circle_distance(o.circle, tc.circle) <= tol;
    });
    if (dup != out.end()) {
      dup->boundary = true;
      continue;
    }
    out.push_back(tc);
  }
  if (out.empty()) throw Error(ErrorCode::NoRealSolution, "no circle of the family passes through the point");
  return out;
}

std::vector<TwoPointTangentCircle> circles_through_points_tangent_to(Point p, Point q, const Circle& alpha,
                                                                     double tol) {
  if (distance(p, q) <= tol) throw Error(ErrorCode::InvalidArgument, "points coincide");
  for (Point x : {p, q}) {
    if (std::abs(distance(x, alpha.center) - alpha.radius) <= tol) {
      throw Error(ErrorCode::PointOnBaseCircle, "point lies on the circle");
    }
  }
  const Inversion inv(p, std::abs(power(alpha, p)));
  const Circle beta = std::get<Circle>(invert_circle(inv, alpha, 0.0));
  const Point qi = inv.apply(q);
  const Point v = qi - beta.center;
  const double dist = norm(v);
  std::vector<TwoPointTangentCircle> out;
  if (dist < beta.radius) return out;
  const double cos_a = beta.radius / dist;
  const double sin_a = std::sqrt(std::max(0.0, (1.0 - cos_a) * (1.0 + cos_a)));
  const Point u = v / dist;
  for (double s : {1.0, -1.0}) {
    const Point dir = cos_a * u + s * sin_a * perp(u);
    const Point touch = beta.center + beta.radius * dir;
    // The tangent line at `touch` has normal `dir` and passes through qi.
    const Line line(dir, dot(dir, touch));
    if (std::abs(line.signed_distance(p)) <= 1e-12 * (dist + beta.radius)) continue;
    const Circle c = std::get<Circle>(invert_line(inv, line, 0.0));
    out.push_back({c, inv.apply(touch), best_contact(c, alpha).contact});
    if (sin_a == 0.0) break;
  }
  return out;
}

}  // namespace emch
