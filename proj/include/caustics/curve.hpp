#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace caustics {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline double distance(Point p, Point q) {
  return std::hypot(p.x - q.x, p.y - q.y);
}

class ConvexityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One trigonometric term a*cos(k*alpha) + b*sin(k*alpha) of the radius of
/// curvature. Complex coefficients relate by a = 2 Re c_k, b = -2 Im c_k.
struct Harmonic {
  int k = 2;
  double a = 0.0;
  double b = 0.0;

  double amplitude() const;
  bool active() const { return a != 0.0 || b != 0.0; }
};

struct ConvexityOptions {
  int grid = 4096;
};

/// Strictly convex C^2 table given by the finite Fourier series of its radius
/// of curvature rho(alpha), alpha being the direction of the tangent.
///
/// Values are immutable once built; every constructor path validates closure
/// (no k = 1 term), index ordering and strict convexity (min rho > 0).
class FourierCurve {
 public:
  /// Throws std::invalid_argument on c0 <= 0, k < 2, duplicate indices, and
  /// ConvexityError when rho is not strictly positive.
  static FourierCurve make(double c0, std::vector<Harmonic> harmonics,
                           Point anchor = {},
                           const ConvexityOptions& opts = {});

  static FourierCurve circle(double radius = 1.0, Point anchor = {});

  double c0() const { return c0_; }
  std::span<const Harmonic> harmonics() const { return harmonics_; }
  Point anchor() const { return anchor_; }

  /// No active harmonic.
  bool is_circle() const;
  int max_index() const;

 private:
  FourierCurve(double c0, std::vector<Harmonic> h, Point anchor)
      : c0_(c0), harmonics_(std::move(h)), anchor_(anchor) {}

  double c0_;
  std::vector<Harmonic> harmonics_;
  Point anchor_;
};

/// Minimum of rho over the circle; returns the certified lower bound
/// c0 - sum |h_k| when it is already positive, otherwise a refined grid min.
double min_radius(double c0, std::span<const Harmonic> harmonics,
                  int grid = 4096);

double eval_radius(const FourierCurve& curve, double alpha);

/// Closed-form antiderivative of x' = rho cos(alpha), y' = rho sin(alpha).
Point boundary_point(const FourierCurve& curve, double alpha);

/// Arc length from alpha = 0 to alpha, s' = rho.
double arc_length(const FourierCurve& curve, double alpha);

/// Rejects tau >= 1 (rho touches zero) and n <= 3 unless allow_small_n.
FourierCurve make_omega_n_tau(int n, double tau, Point anchor = {},
                              bool allow_small_n = false);

double perimeter(const FourierCurve& curve);
double width(const FourierCurve& curve, double alpha);
bool is_constant_width(const FourierCurve& curve, double tol = 1e-10);
double area(const FourierCurve& curve);

/// sin((n-1)d)/(n-1) - sin((n+1)d)/(n+1): the Fourier multiplier of the
/// kernel sin(x) 1_[-d,d] on the n-th harmonic, up to a factor of i.
double kernel_hat(int n, double delta);

constexpr double kDefaultCausticTol = 1e-9;

struct CausticReport {
  double delta = 0.0;
  bool exists = false;
  double residual = 0.0;
  std::vector<int> offenders;
  std::optional<int> matched_n;
};

CausticReport has_constant_caustic(const FourierCurve& curve, double delta,
                                   double tol = kDefaultCausticTol);

/// max over an alpha grid of |int_{alpha-d}^{alpha+d} rho(xi) sin(alpha-xi)|,
/// evaluated exactly per harmonic.
double caustic_residual(const FourierCurve& curve, double delta,
                        int grid = 2048);

struct ContactAngle {
  double gamma = 0.0;  // pi - delta
  double delta = 0.0;
  int n = 0;           // smallest n with delta in A_n
};

struct FloatingReport {
  bool all_angles = false;  // the disc floats at every contact angle
  int n_max = 0;
  std::vector<ContactAngle> angles;  // sorted by gamma
};

FloatingReport floating_report(const FourierCurve& curve, int n_max,
                               double tol = kDefaultCausticTol);

}  // namespace caustics

