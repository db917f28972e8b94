#include "caustics/billiard.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

#include "caustics/bracket.hpp"

namespace caustics {

namespace {

constexpr double kTangentialGuard = 1e-12;
constexpr int kSamples = 64;

double reduce_angle(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r;
}

}  // namespace

Bounce bounce(const FourierCurve& curve, double alpha, double theta) {
  if (!(theta > kTangentialGuard && theta < kPi - kTangentialGuard)) {
    throw TangentialShot(
        fmt::format("tangential shot theta={} has no chord", theta));
  }
  // Work in the offset u = alpha1 - alpha in (0, 2 pi) from a reduced base so
  // the unwrapped alpha never costs precision in the solve.
  const double base = reduce_angle(alpha);
  const double beta = base + theta;
  const double ux = std::cos(beta);
  const double uy = std::sin(beta);
  const Point p0 = boundary_point(curve, base);

  // Signed distance of P(base + u) from the shot line: negative just after
  // the base point, positive just before returning to it, one zero between.
  const auto f = [&](double u) {
    const Point p = boundary_point(curve, base + u);
    return ux * (p.y - p0.y) - uy * (p.x - p0.x);
  };
  const auto df = [&](double u) {
    const double t = base + u;
    return eval_radius(curve, t) * std::sin(t - beta);
  };

  const double step = kTwoPi / kSamples;
  int cell = kSamples;
  for (int j = 1; j < kSamples; ++j) {
    if (f(j * step) >= 0.0) {
      cell = j;
      break;
    }
  }
  double lo = (cell - 1) * step;
  double hi = cell == kSamples ? kTwoPi : cell * step;
  if (cell == 1) {
    double probe = hi;
    for (int i = 0; i < 1100; ++i) {
      probe *= 0.5;
      if (f(probe) < 0.0) break;
    }
    lo = probe;
  }
  if (cell == kSamples) {
    double gap = kTwoPi - lo;
    for (int i = 0; i < 1100; ++i) {
      gap *= 0.5;
      if (f(kTwoPi - gap) > 0.0) break;
    }
    hi = kTwoPi - gap;
  }
  const auto root = detail::bisect_then_polish(f, df, lo, hi, 0.0, 5);
  const double u = root.root;

  const Point p1 = boundary_point(curve, base + u);
  const double dx = p1.x - p0.x;
  const double dy = p1.y - p0.y;
  Bounce b;
  b.chord = std::hypot(dx, dy);
  b.alpha1 = alpha + u;
  b.residual = std::fabs(ux * dy - uy * dx) / b.chord;
  b.theta1 = std::remainder(base + u - std::atan2(dy, dx), kTwoPi);
  if (!(b.theta1 > 0.0 && b.theta1 < kPi)) {
    throw std::logic_error(
        fmt::format("landing angle {} left (0, pi)", b.theta1));
  }
  return b;
}

PhasePoint billiard_step(const FourierCurve& curve, PhasePoint p) {
  const Bounce b = bounce(curve, p.alpha, p.theta);
  return {reduce_angle(b.alpha1), b.theta1};
}

Jacobian billiard_jacobian(const FourierCurve& curve, PhasePoint p) {
  const Bounce b = bounce(curve, p.alpha, p.theta);
  const double k0 = 1.0 / eval_radius(curve, p.alpha);
  const double k1 = 1.0 / eval_radius(curve, b.alpha1);
  const double l = b.chord;
  const double s0 = std::sin(p.theta);
  const double s1 = std::sin(b.theta1);
  Jacobian j;
  j[0][0] = (k0 * l - s0) / s1;
  j[0][1] = l / s1;
  j[1][0] = (k0 * k1 * l - k0 * s1 - k1 * s0) / s1;
  j[1][1] = (k1 * l - s1) / s1;
  return j;
}

std::vector<OrbitRecord> trace_orbit(const FourierCurve& curve,
                                     PhasePoint start, int steps) {
  std::vector<OrbitRecord> out;
  out.reserve(static_cast<std::size_t>(std::max(steps, 0)) + 1);
  double alpha = start.alpha;
  double theta = start.theta;
  for (int i = 0;; ++i) {
    const Point p = boundary_point(curve, alpha);
    out.push_back({i, alpha, theta, p.x, p.y});
    if (i == steps) break;
    const Bounce b = bounce(curve, alpha, theta);
    alpha = b.alpha1;
    theta = b.theta1;
  }
  return out;
}

void write_orbit_dump(std::ostream& os, const std::vector<OrbitRecord>& orbit) {
  os << "step,alpha,theta,x,y\n";
  for (const auto& r : orbit) {
    os << fmt::format("{},{:.17g},{:.17g},{:.17g},{:.17g}\n", r.step, r.alpha,
                      r.theta, r.x, r.y);
  }
}

OrbitSummary iterate_on_caustic(const FourierCurve& curve, double delta,
                                int steps, double alpha0, double tol) {
  if (steps < 1) throw std::invalid_argument("steps must be >= 1");
  const CausticReport rep = has_constant_caustic(curve, delta, tol);
  if (!rep.exists) {
    throw std::invalid_argument(
        fmt::format("curve has no constant-angle caustic at delta={}", delta));
  }
  OrbitSummary sum;
  sum.start = {alpha0, delta};
  sum.steps = steps;
  double alpha = alpha0;
  double theta = delta;
  for (int i = 0; i < steps; ++i) {
    const Bounce b = bounce(curve, alpha, theta);
    alpha = b.alpha1;
    theta = b.theta1;
    sum.max_theta_drift = std::max(sum.max_theta_drift, std::fabs(theta - delta));
  }
  sum.rotation_estimate = (alpha - alpha0) / (kTwoPi * steps);
  if (sum.max_theta_drift > kDriftWarning) {
    sum.warnings.push_back(fmt::format(
        "theta drifted by {:.3e} from the caustic angle", sum.max_theta_drift));
  }
  return sum;
}

}  // namespace caustics
