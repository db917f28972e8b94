#include "caustics/curve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <fmt/format.h>

#include "caustics/trigroots.hpp"

namespace caustics {

namespace {

void check_delta(double delta) {
  if (!(delta > 0.0 && delta < kPi)) {
    throw std::invalid_argument(
        fmt::format("caustic angle {} outside (0, pi)", delta));
  }
}

double radius(double c0, std::span<const Harmonic> hs, double alpha) {
  double r = c0;
  for (const auto& h : hs) {
    const double t = h.k * alpha;
    r += h.a * std::cos(t) + h.b * std::sin(t);
  }
  return r;
}

}  // namespace

double Harmonic::amplitude() const { return std::hypot(a, b); }

double min_radius(double c0, std::span<const Harmonic> harmonics, int grid) {
  double bound = c0;
  for (const auto& h : harmonics) bound -= h.amplitude();
  if (bound > 0.0) return bound;

  grid = std::max(grid, 16);
  const double step = kTwoPi / grid;
  int best = 0;
  double best_val = radius(c0, harmonics, 0.0);
  for (int i = 1; i < grid; ++i) {
    const double v = radius(c0, harmonics, i * step);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  // Golden-section refinement on the two cells around the grid minimum.
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = (best - 1) * step;
  double hi = (best + 1) * step;
  double x1 = hi - invphi * (hi - lo);
  double x2 = lo + invphi * (hi - lo);
  double f1 = radius(c0, harmonics, x1);
  double f2 = radius(c0, harmonics, x2);
  for (int it = 0; it < 80 && hi - lo > 1e-15; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - invphi * (hi - lo);
      f1 = radius(c0, harmonics, x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + invphi * (hi - lo);
      f2 = radius(c0, harmonics, x2);
    }
  }
  return std::min({best_val, f1, f2});
}

FourierCurve FourierCurve::make(double c0, std::vector<Harmonic> harmonics,
                                Point anchor, const ConvexityOptions& opts) {
  if (!(c0 > 0.0) || !std::isfinite(c0)) {
    throw std::invalid_argument(fmt::format("c0 must be positive, got {}", c0));
  }
  std::sort(harmonics.begin(), harmonics.end(),
            [](const Harmonic& l, const Harmonic& r) { return l.k < r.k; });
  for (std::size_t i = 0; i < harmonics.size(); ++i) {
    const auto& h = harmonics[i];
    if (h.k < 2) {
      throw std::invalid_argument(fmt::format(
          "harmonic index {} not allowed; k = 1 would open the curve", h.k));
    }
    if (!std::isfinite(h.a) || !std::isfinite(h.b)) {
      throw std::invalid_argument("non-finite harmonic coefficient");
    }
    if (i > 0 && harmonics[i - 1].k == h.k) {
      throw std::invalid_argument(
          fmt::format("duplicate harmonic index {}", h.k));
    }
  }
  const double m = min_radius(c0, harmonics, opts.grid);
  if (!(m > 0.0)) {
    throw ConvexityError(fmt::format(
        "radius of curvature reaches {} <= 0; curve is not strictly convex",
        m));
  }
  return FourierCurve(c0, std::move(harmonics), anchor);
}

FourierCurve FourierCurve::circle(double r, Point anchor) {
  return make(r, {}, anchor);
}

bool FourierCurve::is_circle() const {
  return std::none_of(harmonics_.begin(), harmonics_.end(),
                      [](const Harmonic& h) { return h.active(); });
}

int FourierCurve::max_index() const {
  int m = 0;
  for (const auto& h : harmonics_) {
    if (h.active()) m = std::max(m, h.k);
  }
  return m;
}

double eval_radius(const FourierCurve& curve, double alpha) {
  return radius(curve.c0(), curve.harmonics(), alpha);
}

Point boundary_point(const FourierCurve& curve, double alpha) {
  const Point o = curve.anchor();
  double x = o.x + curve.c0() * std::sin(alpha);
  double y = o.y - curve.c0() * std::cos(alpha);
  for (const auto& h : curve.harmonics()) {
    const double km = h.k - 1.0;
    const double kp = h.k + 1.0;
    const double sm = std::sin(km * alpha) / km;
    const double cm = std::cos(km * alpha) / km;
    const double sp = std::sin(kp * alpha) / kp;
    const double cp = std::cos(kp * alpha) / kp;
    x += 0.5 * (h.a * (sp + sm) - h.b * (cp + cm));
    y += 0.5 * (h.a * (cm - cp) + h.b * (sm - sp));
  }
  return {x, y};
}

double arc_length(const FourierCurve& curve, double alpha) {
  double s = curve.c0() * alpha;
  for (const auto& h : curve.harmonics()) {
    const double t = h.k * alpha;
    s += (h.a * std::sin(t) - h.b * (std::cos(t) - 1.0)) / h.k;
  }
  return s;
}

FourierCurve make_omega_n_tau(int n, double tau, Point anchor,
                              bool allow_small_n) {
  if (n <= 3 && !allow_small_n) {
    throw std::invalid_argument(fmt::format(
        "n = {} has no nontrivial constant-angle caustic; need n > 3", n));
  }
  if (n < 2) {
    throw std::invalid_argument("harmonic index must be at least 2");
  }
  if (!(tau >= 0.0)) {
    throw std::invalid_argument(fmt::format("tau = {} must be >= 0", tau));
  }
  if (!(tau < 1.0)) {
    throw ConvexityError(fmt::format(
        "tau = {} >= 1: min radius of curvature 1 - tau <= 0, convexity "
        "violated",
        tau));
  }
  std::vector<Harmonic> hs;
  if (tau > 0.0) hs.push_back({n, 0.0, tau});
  return FourierCurve::make(1.0, std::move(hs), anchor);
}

double perimeter(const FourierCurve& curve) { return kTwoPi * curve.c0(); }

double width(const FourierCurve& curve, double alpha) {
  return distance(boundary_point(curve, alpha),
                  boundary_point(curve, alpha + kPi));
}

bool is_constant_width(const FourierCurve& curve, double tol) {
  const bool odd = std::all_of(
      curve.harmonics().begin(), curve.harmonics().end(),
      [](const Harmonic& h) { return !h.active() || h.k % 2 == 1; });
  if (odd) {
    constexpr int kGrid = 1024;
    double dev = 0.0;
    for (int i = 0; i < kGrid; ++i) {
      const double a = kTwoPi * i / kGrid;
      dev = std::max(dev, std::fabs(eval_radius(curve, a) +
                                    eval_radius(curve, a + kPi) -
                                    2.0 * curve.c0()));
    }
    if (!(dev < tol)) {
      throw std::logic_error(fmt::format(
          "odd harmonics but rho(a)+rho(a+pi) deviates by {}", dev));
    }
  }
  return odd;
}

double area(const FourierCurve& curve) {
  // x y' - y x' is a trigonometric polynomial of degree <= 2 (K + 1); the
  // trapezoid rule with more nodes than that is exact.
  const int n = std::max(64, 4 * (curve.max_index() + 2));
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double a = kTwoPi * i / n;
    const Point p = boundary_point(curve, a);
    const double r = eval_radius(curve, a);
    acc += p.x * r * std::sin(a) - p.y * r * std::cos(a);
  }
  return 0.5 * acc * kTwoPi / n;
}

namespace {

// sin(m delta), exact at the quarter turn so odd-n kernels vanish identically.
double sin_multiple(int m, double delta) {
  if (delta == kPi / 2) {
    static constexpr double quarter[4] = {0.0, 1.0, 0.0, -1.0};
    return quarter[m % 4];
  }
  return std::sin(m * delta);
}

}  // namespace

double kernel_hat(int n, double delta) {
  if (n < 2) {
    throw std::invalid_argument(fmt::format("kernel index {} < 2", n));
  }
  return sin_multiple(n - 1, delta) / (n - 1.0) -
         sin_multiple(n + 1, delta) / (n + 1.0);
}

CausticReport has_constant_caustic(const FourierCurve& curve, double delta,
                                   double tol) {
  check_delta(delta);
  CausticReport rep;
  rep.delta = delta;
  if (curve.is_circle()) {
    rep.exists = true;
    return rep;
  }
  for (const auto& h : curve.harmonics()) {
    if (!h.active()) continue;
    const double v = std::fabs(kernel_hat(h.k, delta)) * h.amplitude();
    rep.residual = std::max(rep.residual, v);
    if (v > tol) {
      rep.offenders.push_back(h.k);
    } else if (!rep.matched_n) {
      rep.matched_n = h.k;
    }
  }
  rep.exists = rep.offenders.empty() && rep.matched_n.has_value();
  return rep;
}

double caustic_residual(const FourierCurve& curve, double delta, int grid) {
  check_delta(delta);
  // Per harmonic the integral is K_k (a_k sin k alpha - b_k cos k alpha),
  // K_k = kernel_hat(k, delta); the constant term integrates to zero.
  std::vector<double> kk;
  for (const auto& h : curve.harmonics()) kk.push_back(kernel_hat(h.k, delta));
  grid = std::max(grid, 8);
  double worst = 0.0;
  for (int i = 0; i < grid; ++i) {
    const double a = kTwoPi * i / grid;
    double v = 0.0;
    std::size_t j = 0;
    for (const auto& h : curve.harmonics()) {
      const double t = h.k * a;
      v += kk[j++] * (h.a * std::sin(t) - h.b * std::cos(t));
    }
    worst = std::max(worst, std::fabs(v));
  }
  return worst;
}

FloatingReport floating_report(const FourierCurve& curve, int n_max,
                               double tol) {
  FloatingReport rep;
  rep.n_max = n_max;
  if (curve.is_circle()) {
    rep.all_angles = true;
    return rep;
  }
  auto& cache = RootCache::shared();
  for (int n = 2; n <= n_max; ++n) {
    for (double d : cache.angles(n).members) {
      const bool seen =
          std::any_of(rep.angles.begin(), rep.angles.end(),
                      [d](const ContactAngle& c) {
                        return std::fabs(c.delta - d) < 1e-12;
                      });
      if (seen) continue;
      if (has_constant_caustic(curve, d, tol).exists) {
        rep.angles.push_back({kPi - d, d, n});
      }
    }
  }
  std::sort(rep.angles.begin(), rep.angles.end(),
            [](const ContactAngle& l, const ContactAngle& r) {
              return l.gamma < r.gamma;
            });
  return rep;
}

}  // namespace caustics
