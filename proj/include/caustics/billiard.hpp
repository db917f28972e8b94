#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "caustics/curve.hpp"

namespace caustics {

/// Phase point of the billiard map: alpha is the tangent direction at the
/// base point, theta the outgoing angle measured from the positively oriented
/// tangent.
struct PhasePoint {
  double alpha = 0.0;
  double theta = 0.0;
};

/// Thrown for shots within 1e-12 of the boundary of the phase cylinder.
class TangentialShot : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One bounce with the landing parameter kept unwrapped in
/// (alpha, alpha + 2 pi).
struct Bounce {
  double alpha1 = 0.0;
  double theta1 = 0.0;
  double chord = 0.0;     // l(s, s1)
  double residual = 0.0;  // sine of the angle between chord and shot ray
};

Bounce bounce(const FourierCurve& curve, double alpha, double theta);

/// F(alpha, theta) with alpha1 reduced to [0, 2 pi).
PhasePoint billiard_step(const FourierCurve& curve, PhasePoint p);

/// Row-major [[ds1/ds, ds1/dtheta], [dtheta1/ds, dtheta1/dtheta]] in
/// arc-length coordinates, from the closed-form partials.
using Jacobian = std::array<std::array<double, 2>, 2>;

Jacobian billiard_jacobian(const FourierCurve& curve, PhasePoint p);

struct OrbitRecord {
  int step = 0;
  double alpha = 0.0;  // cumulative
  double theta = 0.0;
  double x = 0.0;
  double y = 0.0;
};

std::vector<OrbitRecord> trace_orbit(const FourierCurve& curve,
                                     PhasePoint start, int steps);

/// "step,alpha,theta,x,y" rows.
void write_orbit_dump(std::ostream& os, const std::vector<OrbitRecord>& orbit);

struct OrbitSummary {
  PhasePoint start;
  int steps = 0;
  double rotation_estimate = 0.0;
  double max_theta_drift = 0.0;
  std::vector<std::string> warnings;
};

constexpr double kDriftWarning = 1e-6;

/// Iterates from (alpha0, delta). theta is re-read from the geometry every
/// step, so max_theta_drift measures the actual numerical error. Throws
/// std::invalid_argument if the curve has no caustic at delta.
OrbitSummary iterate_on_caustic(const FourierCurve& curve, double delta,
                                int steps, double alpha0 = 0.0,
                                double tol = kDefaultCausticTol);

}  // namespace caustics
