#include "emch/geometry.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <limits>
#include <string>

namespace emch {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::CoincidentCircles: return "CoincidentCircles";
    case ErrorCode::DegenerateRestriction: return "DegenerateRestriction";
    case ErrorCode::NotTangent: return "NotTangent";
    case ErrorCode::PointOnBaseCircle: return "PointOnBaseCircle";
    case ErrorCode::NoRealSolution: return "NoRealSolution";
    case ErrorCode::PointNotOnCircle: return "PointNotOnCircle";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::DegenerateTriangle: return "DegenerateTriangle";
    case ErrorCode::NotConcentric: return "NotConcentric";
    case ErrorCode::SeriesBlocked: return "SeriesBlocked";
    case ErrorCode::NotNested: return "NotNested";
    case ErrorCode::AssumptionViolated: return "AssumptionViolated";
    case ErrorCode::NormalizationFailed: return "NormalizationFailed";
    case ErrorCode::NotTangentConfiguration: return "NotTangentConfiguration";
    case ErrorCode::ImaginaryMember: return "ImaginaryMember";
    case ErrorCode::DegeneratePair: return "DegeneratePair";
    case ErrorCode::NoTangentMember: return "NoTangentMember";
    case ErrorCode::NoRealAp: return "NoRealAp";
    case ErrorCode::AmbiguousAp: return "AmbiguousAp";
    case ErrorCode::NoRealPair: return "NoRealPair";
    case ErrorCode::NotDoublyTangent: return "NotDoublyTangent";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SchemaError: return "SchemaError";
  }
  return "Unknown";
}

Circle::Circle(Point c, double r) : center(c), radius(r) {
  if (!(r > 0.0) || !std::isfinite(r) || !std::isfinite(c.x) || !std::isfinite(c.y)) {
    throw Error(ErrorCode::InvalidArgument, "circle needs a finite center and positive radius");
  }
}

Line::Line(Point n, double d) {
  const double len = norm(n);
  if (!(len > 0.0) || !std::isfinite(len) || !std::isfinite(d)) {
    throw Error(ErrorCode::InvalidArgument, "line normal must be finite and nonzero");
  }
  normal = n / len;
  offset = d / len;
}

Line Line::through(Point a, Point b) {
  const Point n = perp(b - a);
  if (norm(n) == 0.0) throw Error(ErrorCode::InvalidArgument, "line through coincident points");
  const Point u = n / norm(n);
  return Line(u, dot(u, a));
}

Quadric Quadric::from_circle(const Circle& circle) {
  const Point l = circle.linear();
  return {1.0, 0.0, 1.0, l.x, l.y, circle.constant()};
}

Quadric Quadric::from_line_squared(const Line& line) {
  const Point n = line.normal;
  const double d = line.offset;
  return {n.x * n.x, n.x * n.y, n.y * n.y, -2.0 * d * n.x, -2.0 * d * n.y, d * d};
}

Quadric Quadric::from_coefficients(const std::array<double, 6>& k) {
  return {k[0], k[1], k[2], k[3], k[4], k[5]};
}

double Quadric::max_abs_coefficient() const {
  double m = 0.0;
  for (double v : coefficients()) m = std::max(m, std::abs(v));
  return m;
}

double Quadric::determinant() const {
  const double d1 = b1 / 2.0, d2 = b2 / 2.0;
  return a11 * (a22 * c - d2 * d2) - a12 * (a12 * c - d2 * d1) + d1 * (a12 * d2 - a22 * d1);
}

Quadric operator+(const Quadric& a, const Quadric& b) {
  return {a.a11 + b.a11, a.a12 + b.a12, a.a22 + b.a22, a.b1 + b.b1, a.b2 + b.b2, a.c + b.c};
}

Quadric operator-(const Quadric& a, const Quadric& b) { return a + (-1.0) * b; }

Quadric operator*(double s, const Quadric& q) {
  return {s * q.a11, s * q.a12, s * q.a22, s * q.b1, s * q.b2, s * q.c};
}

double quadric_distance_up_to_scale(const Quadric& a, const Quadric& b) {
  auto ka = a.coefficients();
  auto kb = b.coefficients();
  double na = 0, nb = 0, d = 0;
  for (int i = 0; i < 6; ++i) {
    na += ka[i] * ka[i];
    nb += kb[i] * kb[i];
    d += ka[i] * kb[i];
  }
  if (na == 0.0 || nb == 0.0) return (na == nb) ? 0.0 : 1.0;
  na = std::sqrt(na);
  nb = std::sqrt(nb) * (d < 0 ? -1.0 : 1.0);
  double worst = 0.0;
  for (int i = 0; i < 6; ++i) worst = std::max(worst, std::abs(ka[i] / na - kb[i] / nb));
  return worst;
}

Inversion::Inversion(Point c, double k) : center(c), power(k) {
  if (!(k != 0.0) || !std::isfinite(k)) {
    throw Error(ErrorCode::InvalidArgument, "inversion power must be finite and nonzero");
  }
}

Point Inversion::apply(Point p) const {
  const Point v = p - center;
  const double d2 = norm2(v);
  if (d2 == 0.0) throw Error(ErrorCode::InvalidArgument, "cannot invert the inversion center");
  return center + (power / d2) * v;
}

double power(const Circle& c, Point p) {
  const Point v = p - c.center;
  return dot(v, v) - c.radius * c.radius;
}

double circle_distance(const Circle& a, const Circle& b) {
  return std::max(distance(a.center, b.center), std::abs(a.radius - b.radius));
}

std::vector<Point> circle_circle_intersection(const Circle& a, const Circle& b, double tol) {
  const Point delta = b.center - a.center;
  const double d = norm(delta);
  const double ra = a.radius, rb = b.radius;
  if (d <= tol && std::abs(ra - rb) <= tol) {
    throw Error(ErrorCode::CoincidentCircles, "circles coincide within tolerance");
  }
  if (d <= tol) return {};
  const double outer = ra + rb;
  const double inner = std::abs(ra - rb);
  if (d > outer + tol || d < inner - tol) return {};
  const Point u = delta / d;
  const double along = (d * d + ra * ra - rb * rb) / (2.0 * d);
  if (std::abs(d - outer) <= tol || std::abs(d - inner) <= tol) {
    return {a.center + along * u};
  }
  // Factored form of ra^2 - along^2 avoids cancellation near tangency.
  const double h2 = (outer - d) * (outer + d) * (d - (ra - rb)) * (d + (ra - rb));
  const double h = std::sqrt(std::max(h2, 0.0)) / (2.0 * d);
  const Point base = a.center + along * u;
  return {base + h * perp(u), base - h * perp(u)};
}

std::vector<Point> line_circle_intersection(const Line& l, const Circle& c, double tol) {
  const double s = l.signed_distance(c.center);
  const double r = c.radius;
  if (std::abs(s) > r + tol) return {};
  const Point base = c.center - s * l.normal;
  if (std::abs(std::abs(s) - r) <= tol) return {base};
  const double h = std::sqrt(std::max((r - s) * (r + s), 0.0));
  const Point dir = l.direction();
  return {base + h * dir, base - h * dir};
}

int orientation(Point a, Point b, Point c) {
  const double left = (b.x - a.x) * (c.y - a.y);
  const double right = (b.y - a.y) * (c.x - a.x);
  const double det = left - right;
  // Static filter (Shewchuk's orient2d bound); exact rational fallback.
  constexpr double eps = std::numeric_limits<double>::epsilon() / 2.0;
  const double bound = (3.0 + 16.0 * eps) * eps * (std::abs(left) + std::abs(right));
  if (det > bound) return 1;
  if (-det > bound) return -1;
  using boost::multiprecision::cpp_rational;
  const cpp_rational ax(a.x), ay(a.y), bx(b.x), by(b.y), cx(c.x), cy(c.y);
  const cpp_rational exact = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
  return exact > 0 ? 1 : (exact < 0 ? -1 : 0);
}

CircleOrLine invert_circle(const Inversion& inv, const Circle& c, double tol) {
  const Point v = c.center - inv.center;
  const double d = norm(v);
  const double r = c.radius;
  if (std::abs(d - r) <= tol) {
    const Point u = v / d;
    return Line(u, dot(u, inv.center) + inv.power / (d + r));
  }
  const double s = inv.power / ((d - r) * (d + r));
  return Circle(inv.center + s * v, std::abs(s) * r);
}

CircleOrLine invert_line(const Inversion& inv, const Line& l, double tol) {
  const double h = l.signed_distance(inv.center);
  if (std::abs(h) <= tol) return l;
  const double k = inv.power;
  return Circle(inv.center - (k / (2.0 * h)) * l.normal, std::abs(k / (2.0 * h)));
}

double quadric_eval(const Quadric& q, Point p) { return q(p); }

std::array<double, 3> restrict_to_line(const Quadric& q, const Line& l) {
  const Point f = l.foot();
  const Point d = l.direction();
  const double a = q.a11 * d.x * d.x + 2.0 * q.a12 * d.x * d.y + q.a22 * d.y * d.y;
  const double b = dot(q.gradient(f), d);
  return {a, b, q(f)};
}

double line_tangency_residual(const Quadric& q, const Line& l) {
  const double m = q.max_abs_coefficient();
  if (m == 0.0) throw Error(ErrorCode::DegenerateRestriction, "zero quadric");
  const auto [a, b, c] = restrict_to_line((1.0 / m) * q, l);
  const double scale = 1.0 + std::abs(l.offset);
  if (std::abs(a) <= 1e-14 && std::abs(b) <= 1e-14 * scale) {
    throw Error(ErrorCode::DegenerateRestriction, "quadric is constant along the line");
  }
  return b * b - 4.0 * a * c;
}

}  // namespace emch
