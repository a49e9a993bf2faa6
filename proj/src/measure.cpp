#include "emch/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace emch {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

double wrap(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0) t += kTwoPi;
  return t;
}

// |e^{it} - e^{ir}| for a root r at signed angular offset t - r.
double chord(double offset) { return 2.0 * std::abs(std::sin(0.5 * offset)); }

}  // namespace

PairDensity PairDensity::pair(const Circle& a0, const Circle& a1) {
  PairDensity d;
  d.kind = DensityKind::CirclePair;
  d.alpha0 = a0;
  d.alpha1 = a1;
  return d;
}

PairDensity PairDensity::single(const Circle& a0) {
  PairDensity d;
  d.kind = DensityKind::SingleCircle;
  d.alpha0 = a0;
  return d;
}

PairDensity PairDensity::of_cyclic(const emch::Cyclic& f) {
  if (f.is_zero()) throw Error(ErrorCode::InvalidArgument, "cyclic is identically zero");
  PairDensity d;
  d.kind = DensityKind::Cyclic;
  d.cyclic = f;
  return d;
}

PairDensity PairDensity::reciprocal_power(const Circle& a0) {
  PairDensity d;
  d.kind = DensityKind::ReciprocalPower;
  d.alpha0 = a0;
  return d;
}

double rho(const PairDensity& d, Point p) {
  double v = 0.0;
  switch (d.kind) {
    case DensityKind::CirclePair:
      v = std::abs(power(d.alpha0, p) * power(d.alpha1, p));
      return v == 0.0 ? kInf : 1.0 / std::sqrt(v);
    case DensityKind::SingleCircle:
      v = std::abs(power(d.alpha0, p));
      return v == 0.0 ? kInf : 1.0 / std::sqrt(v);
    case DensityKind::Cyclic:
      v = std::abs(d.cyclic(p));
      return v == 0.0 ? kInf : 1.0 / std::sqrt(v);
    case DensityKind::ReciprocalPower:
      v = std::abs(power(d.alpha0, p));
      return v == 0.0 ? kInf : 1.0 / v;
  }
  return kInf;
}

RestrictedDensity::RestrictedDensity(const PairDensity& density, const Circle& delta, double quad_tol)
    : delta_(delta), quad_tol_(quad_tol) {
  const double big_r = delta.radius;
  std::vector<std::vector<double>> unit_angles;

  // f_a on delta is u + w cos(t - psi) = (w/2) |z - z1| |z - z2| with z = e^{it}.
  auto add_circle = [&](const Circle& a, double exponent) {
    const Point dc = delta.center - a.center;
    const double u = norm2(dc) + big_r * big_r - a.radius * a.radius;
    const Point v = 2.0 * big_r * dc;
    const double w = norm(v);
    Factor f;
    f.exponent = exponent;
    std::vector<double> angles;
    if (w == 0.0) {
      if (u == 0.0) throw Error(ErrorCode::InvalidArgument, "delta coincides with a source circle");
      f.scale = std::abs(u);
    } else {
      const double psi = std::atan2(v.y, v.x);
      const double ratio = -u / w;
      f.scale = 0.5 * w;
      if (std::abs(ratio) <= 1.0) {
        const double phi = std::acos(ratio);
        angles = {psi + phi, psi - phi};
      } else {
        const double s = std::sqrt(ratio * ratio - 1.0);
        const std::complex<double> e = std::polar(1.0, psi);
        f.off = {(ratio + s) * e, (ratio - s) * e};
      }
    }
    factors_.push_back(f);
    unit_angles.push_back(angles);
  };

  switch (density.kind) {
    case DensityKind::CirclePair:
      add_circle(density.alpha0, 0.5);
      add_circle(density.alpha1, 0.5);
      break;
    case DensityKind::SingleCircle:
      add_circle(density.alpha0, 0.5);
      break;
    case DensityKind::ReciprocalPower:
      add_circle(density.alpha0, 1.0);
      break;
    case DensityKind::Cyclic: {
      const TrigQuadratic g = restrict_to_circle(reduce_on_circle(density.cyclic, delta), delta);
      if (g.max_abs_coefficient() == 0.0) {
        throw Error(ErrorCode::InvalidArgument, "delta is a component of the cyclic");
      }
      const auto poly = g.polynomial();
      std::vector<std::complex<double>> coeffs(poly.begin(), poly.end());
      const double scale = g.max_abs_coefficient();
      while (std::abs(coeffs.front()) <= 1e-14 * scale) coeffs.erase(coeffs.begin());
      Factor f;
      f.scale = std::abs(coeffs.front());
      std::vector<double> angles;
      for (const auto& z : polynomial_roots(coeffs)) {
        if (std::abs(std::abs(z) - 1.0) <= 1e-7) {
          double t = std::arg(z);
          for (int it = 0; it < 6; ++it) {
            const double dg = g.derivative(t);
            if (dg == 0.0) break;
            const double step = g(t) / dg;
            if (std::abs(step) > 1e-6) break;
            t -= step;
          }
          angles.push_back(t);
        } else {
          f.off.push_back(z);
        }
      }
      factors_.push_back(f);
      unit_angles.push_back(angles);
      break;
    }
  }

  for (std::size_t k = 0; k < factors_.size(); ++k) {
    for (double t : unit_angles[k]) {
      t = wrap(t);
      int id = -1;
      for (std::size_t r = 0; r < roots_.size(); ++r) {
        const double gap = std::abs(wrap(t - roots_[r].theta + std::numbers::pi) - std::numbers::pi);
        if (gap <= 1e-10) id = static_cast<int>(r);
      }
      if (id < 0) {
        roots_.push_back({t, 0.0});
        id = static_cast<int>(roots_.size()) - 1;
      }
      roots_[id].exponent += factors_[k].exponent;
      factors_[k].unit.push_back(id);
    }
  }
  for (const Root& r : roots_) singular_.push_back(r.theta);
  std::sort(singular_.begin(), singular_.end());
}

double RestrictedDensity::integrand(double theta, int left_root, double left_offset, int right_root,
                                    double right_offset) const {
  const std::complex<double> z = std::polar(1.0, theta);
  double value = delta_.radius;
  for (const Factor& f : factors_) {
    double g = f.scale;
    for (const auto& zk : f.off) g *= std::abs(z - zk);
    for (int id : f.unit) {
      if (id == left_root) {
        g *= chord(left_offset);
      } else if (id == right_root) {
        g *= chord(right_offset);
      } else {
        g *= chord(theta - roots_[id].theta);
      }
    }
    if (g == 0.0) return kInf;
    value *= f.exponent == 1.0 ? 1.0 / g : 1.0 / std::sqrt(g);
  }
  return value;
}

double RestrictedDensity::at(double theta) const {
  return integrand(theta, -1, 0.0, -1, 0.0) / delta_.radius;
}

QuadratureResult RestrictedDensity::panel(double a, double b, int left_root, int right_root, double tol) const {
  const double len = b - a;
  if (left_root < 0 && right_root < 0) {
    return integrate_adaptive([&](double t) { return integrand(t, -1, 0.0, -1, 0.0); }, a, b, tol);
  }
  // theta = a + len sin^2 u absorbs inverse square roots at both ends.
  auto f = [&](double u) {
    const double s = std::sin(u), c = std::cos(u);
    const double lo = len * s * s, hi = len * c * c;
    const double theta = u < 0.25 * std::numbers::pi ? a + lo : b - hi;
    return integrand(theta, left_root, lo, right_root, hi) * len * 2.0 * s * c;
  };
  return integrate_adaptive(f, 0.0, 0.5 * std::numbers::pi, tol);
}

QuadratureResult RestrictedDensity::mass(double theta, double sweep) const {
  QuadratureResult total;
  if (sweep <= 0.0) return total;
  if (sweep > kTwoPi) throw Error(ErrorCode::InvalidArgument, "sweep exceeds a full turn");
  const double start = wrap(theta);
  const double end = start + sweep;

  struct Cut {
    double theta;
    int root;
  };
  std::vector<Cut> cuts{{start, -1}, {end, -1}};
  for (std::size_t r = 0; r < roots_.size(); ++r) {
    double t = roots_[r].theta;
    while (t < start - 1e-12) t += kTwoPi;
    while (t > start + 1e-12 + kTwoPi) t -= kTwoPi;
    for (double cand : {t, t + kTwoPi}) {
      if (cand < start - 1e-12 || cand > end + 1e-12) continue;
      if (roots_[r].exponent >= 1.0) {
        throw Error(ErrorCode::QuadratureFailure, "density is not integrable across a tangency with delta");
      }
      const int id = static_cast<int>(r);
      if (std::abs(cand - start) <= 1e-12) {
        cuts.front().root = id;
      } else if (std::abs(cand - end) <= 1e-12) {
        cuts[1].root = id;
      } else {
        cuts.push_back({cand, id});
      }
    }
  }
  std::sort(cuts.begin(), cuts.end(), [](const Cut& x, const Cut& y) { return x.theta < y.theta; });

  struct Piece {
    double a, b;
    int left, right;
  };
  std::vector<Piece> pieces;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double a = cuts[k].theta, b = cuts[k + 1].theta;
    if (b <= a) continue;
    const int parts = std::max(1, static_cast<int>(std::ceil((b - a) / (0.5 * std::numbers::pi))));
    for (int j = 0; j < parts; ++j) {
      const double pa = a + (b - a) * j / parts;
      const double pb = j + 1 == parts ? b : a + (b - a) * (j + 1) / parts;
      pieces.push_back({pa, pb, j == 0 ? cuts[k].root : -1, j + 1 == parts ? cuts[k + 1].root : -1});
    }
  }
  const double tol = quad_tol_ / std::max<std::size_t>(1, pieces.size());
  for (const Piece& p : pieces) {
    const QuadratureResult r = panel(p.a, p.b, p.left, p.right, tol);
    total.value += r.value;
    total.error += r.error;
    total.evaluations += r.evaluations;
  }
  return total;
}

double RestrictedDensity::total() const {
  if (!total_) total_ = mass(0.0, kTwoPi);
  return total_->value;
}

double RestrictedDensity::angle_at_mass(double theta, double target) const {
  if (target < 0.0 || target > total()) throw Error(ErrorCode::InvalidArgument, "mass outside [0, m(delta)]");
  double lo = 0.0, hi = kTwoPi;
  double s = kTwoPi * target / total();
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double f = mass(theta, s).value - target;
    if (f > 0) {
      hi = s;
    } else {
      lo = s;
    }
    if (std::abs(f) <= 1e-15 * std::max(1.0, target)) break;
    // Newton with a bisection fallback.
    const double dens = at(theta + s) * delta_.radius;
    double next = std::isfinite(dens) && dens > 0 ? s - f / dens : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - s) <= 1e-15) break;
    s = next;
  }
  return theta + s;
}

ArcMass arc_mass(const PairDensity& d, const Circle& delta, Point from, Point to, Direction dir,
                 const Tolerances& tol) {
  const double slack = tol.geo * std::max(1.0, delta.radius);
  for (Point p : {from, to}) {
    if (std::abs(distance(p, delta.center) - delta.radius) > slack) {
      throw Error(ErrorCode::PointNotOnCircle, "arc endpoint is not on delta");
    }
  }
  const RestrictedDensity density(d, delta, tol.quad);
  ArcMass out;
  out.total = density.total();
  if (from == to) return out;
  const double a = delta.angle_of(from), b = delta.angle_of(to);
  const double sweep = dir == Direction::Ccw ? wrap(b - a) : wrap(a - b);
  const QuadratureResult r = density.mass(dir == Direction::Ccw ? a : b, sweep);
  out.value = r.value;
  out.error = r.error;
  return out;
}

double total_mass(const PairDensity& d, const Circle& delta, const Tolerances& tol) {
  return RestrictedDensity(d, delta, tol.quad).total();
}

ZigzagConfig::ZigzagConfig(const Circle& a0, const Circle& a1, double tol) : alpha0(a0), alpha1(a1) {
  if (distance(a0.center, a1.center) > tol) {
    throw Error(ErrorCode::NotConcentric, "zigzag base circles must be concentric");
  }
}

Circle ZigzagConfig::mid() const { return {alpha0.center, 0.5 * (alpha0.radius + alpha1.radius)}; }

double ZigzagConfig::jump() const { return 0.5 * std::abs(alpha1.radius - alpha0.radius); }

double black_howland(const ZigzagConfig& z, Point p) {
  std::array<double, 3> s = {distance(p, z.alpha0.center), z.mid().radius, z.jump()};
  std::sort(s.begin(), s.end(), std::greater<>());
  const double a = s[0], b = s[1], c = s[2];
  const double sixteen_area2 = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
  if (!(sixteen_area2 > 0.0)) throw Error(ErrorCode::DegenerateTriangle, "point is not strictly between the base circles");
  return 2.0 / std::sqrt(sixteen_area2);
}

ZigzagWitness black_howland_witness(const ZigzagConfig& z, Point p) {
  const Circle mid = z.mid();
  const double l = z.jump();
  if (l == 0.0) throw Error(ErrorCode::DegenerateTriangle, "zero jump length");
  const auto hits = circle_circle_intersection(mid, Circle(p, l));
  if (hits.size() < 2) throw Error(ErrorCode::DegenerateTriangle, "no witness point at the jump distance");
  const Point c = z.alpha0.center;
  const double twice_area = std::abs(cross(hits[0] - c, p - c));
  if (twice_area == 0.0) throw Error(ErrorCode::DegenerateTriangle, "flat witness triangle");
  return {hits[0], 1.0 / twice_area};
}

std::vector<Point> sample_circle(const Circle& c, int count, double phase) {
  std::vector<Point> pts;
  pts.reserve(count);
  for (int k = 0; k < count; ++k) pts.push_back(c.at(phase + kTwoPi * k / count));
  return pts;
}

namespace {

SpreadReport spread_of(const std::vector<double>& values, int skipped) {
  SpreadReport r;
  r.skipped = skipped;
  r.used = static_cast<int>(values.size());
  if (values.empty()) return r;
  for (double v : values) r.mean += v;
  r.mean /= static_cast<double>(values.size());
  for (double v : values) r.max_deviation = std::max(r.max_deviation, std::abs(v - r.mean) / std::abs(r.mean));
  return r;
}

// Powers below this fraction of their terms have lost most of their digits.
bool cancels(const Circle& a, Point x) {
  return std::abs(power(a, x)) < 1e-4 * (norm2(x - a.center) + a.radius * a.radius);
}

}  // namespace

SpreadReport verify_prop1(const TangentCircle& omega, const PairDensity& d, int samples) {
  if (samples < 3) throw Error(ErrorCode::InvalidArgument, "need at least three samples");
  if (distance(omega.touch0, omega.touch1) == 0.0) {
    throw Error(ErrorCode::InvalidArgument, "touch points coincide");
  }
  const Line base = Line::through(omega.touch0, omega.touch1);
  std::vector<double> values;
  int skipped = 0;
  for (Point x : sample_circle(omega.circle, samples)) {
    if (cancels(d.alpha0, x) || (d.kind == DensityKind::CirclePair && cancels(d.alpha1, x))) {
      ++skipped;
      continue;
    }
    values.push_back(rho(d, x) * std::abs(base.signed_distance(x)));
  }
  return spread_of(values, skipped);
}

SpreadReport steiner_spread(const Circle& alpha0, const Circle& alpha1, const Circle& delta, int samples) {
  const PairDensity d = PairDensity::pair(alpha0, alpha1);
  std::vector<double> values;
  int skipped = 0;
  for (Point x : sample_circle(delta, samples)) {
    if (cancels(alpha0, x) || cancels(alpha1, x)) {
      ++skipped;
      continue;
    }
    values.push_back(rho(d, x) * std::abs(power(alpha0, x)));
  }
  return spread_of(values, skipped);
}

InvarianceReport verify_invariance(const PairDensity& d, const Family& family, const Circle& delta,
                                   const TangentCircle& omega, double eps, const Tolerances& tol) {
  InvarianceReport rep;
  const auto hits = circle_circle_intersection(omega.circle, delta, tol.geo);
  if (hits.size() < 2) {
    rep.skipped = true;
    return rep;
  }
  rep.x = hits[0];
  rep.y = hits[1];
  const double r = delta.radius;
  const Point moved = delta.at(delta.angle_of(rep.x) + eps / r);
  const auto candidates = tangent_circles_through_point(family.alpha0, family.alpha1, moved, family.index, tol.geo);
  const TangentCircle* best = &candidates.front();
  for (const TangentCircle& c : candidates) {
    if (circle_distance(c.circle, omega.circle) < circle_distance(best->circle, omega.circle)) best = &c;
  }
  const auto next = circle_circle_intersection(best->circle, delta, tol.geo);
  if (next.empty()) {
    rep.skipped = true;
    return rep;
  }
  Point y2 = next.front();
  for (Point p : next) {
    if (distance(p, rep.y) < distance(y2, rep.y)) y2 = p;
  }
  const double turn = delta.angle_of(y2) - delta.angle_of(rep.y);
  rep.dx = std::abs(eps);
  rep.dy = r * std::abs(std::remainder(turn, kTwoPi));
  const double lhs = rho(d, rep.x) * rep.dx;
  rep.residual = std::abs(lhs - rho(d, rep.y) * rep.dy) / lhs;
  return rep;
}

HalvingCheck halving_check(double at_eps, double at_half, double floor) {
  HalvingCheck h{at_eps, at_half, at_half == 0.0 ? kInf : at_eps / at_half, false};
  h.pass = (h.ratio >= 1.5 && h.ratio <= 2.5) || std::max(at_eps, at_half) <= floor;
  return h;
}

LimitReport jacobi_bertrand_limit_check(const Circle& alpha0, const Circle& delta, Point center1,
                                        const std::vector<double>& r1_sequence, int samples) {
  LimitReport rep;
  const auto pts = sample_circle(delta, samples);
  for (double r1 : r1_sequence) {
    const PairDensity d = PairDensity::pair(alpha0, Circle(center1, r1));
    double dev = 0.0;
    for (Point x : pts) {
      const double diff = std::abs(r1 * rho(d, x) - 1.0 / std::sqrt(std::abs(power(alpha0, x))));
      if (std::isfinite(diff)) dev = std::max(dev, diff);
    }
    if (!rep.rows.empty() && dev >= rep.rows.back().deviation) rep.decreasing = false;
    rep.rows.push_back({r1, dev});
  }
  return rep;
}

}  // namespace emch
