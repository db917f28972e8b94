#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "caustics/billiard.hpp"
#include "caustics/curve.hpp"

using namespace caustics;

namespace {

const double kX4 = std::atan(std::sqrt(5.0));

double wrap(double a) { return std::remainder(a, kTwoPi); }

// Finite-difference Jacobian in arc-length coordinates, ds = rho d(alpha).
Jacobian fd_jacobian(const FourierCurve& c, PhasePoint p, double h = 1e-6) {
  const Bounce ap = bounce(c, p.alpha + h, p.theta);
  const Bounce am = bounce(c, p.alpha - h, p.theta);
  const Bounce tp = bounce(c, p.alpha, p.theta + h);
  const Bounce tm = bounce(c, p.alpha, p.theta - h);
  const double r0 = eval_radius(c, p.alpha);
  const double r1 = eval_radius(c, bounce(c, p.alpha, p.theta).alpha1);
  Jacobian j;
  j[0][0] = r1 * (ap.alpha1 - am.alpha1) / (2 * h) / r0;
  j[0][1] = r1 * (tp.alpha1 - tm.alpha1) / (2 * h);
  j[1][0] = (ap.theta1 - am.theta1) / (2 * h) / r0;
  j[1][1] = (tp.theta1 - tm.theta1) / (2 * h);
  return j;
}

}  // namespace

TEST_CASE("disc oracles") {
  const auto disc = FourierCurve::circle();
  const PhasePoint d = billiard_step(disc, {0.3, kPi / 2});
  CHECK(std::fabs(wrap(d.alpha - (0.3 + kPi))) < 1e-12);
  CHECK(d.theta == doctest::Approx(kPi / 2));
  for (double th : {0.2, 0.7, 1.3, 2.5}) {
    const Bounce b = bounce(disc, 1.0, th);
    CHECK(b.alpha1 == doctest::Approx(1.0 + 2 * th).epsilon(1e-12));
    CHECK(b.theta1 == doctest::Approx(th).epsilon(1e-12));
    CHECK(b.chord == doctest::Approx(2 * std::sin(th)).epsilon(1e-12));
  }
  const Jacobian j = billiard_jacobian(disc, {0.0, kPi / 2});
  CHECK(j[0][0] == doctest::Approx(1.0));
}

TEST_CASE("landing point lies on the shot ray") {
  const auto om = make_omega_n_tau(5, 0.6);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> ua(0.0, kTwoPi), ut(0.01, kPi - 0.01);
  for (int i = 0; i < 200; ++i) {
    const double a = ua(rng), t = ut(rng);
    const Bounce b = bounce(om, a, t);
    CHECK(b.alpha1 > a);
    CHECK(b.alpha1 < a + kTwoPi);
    const Point p0 = boundary_point(om, a), p1 = boundary_point(om, b.alpha1);
    const double dx = std::cos(a + t), dy = std::sin(a + t);
    const double vx = p1.x - p0.x, vy = p1.y - p0.y;
    CHECK(std::fabs(dx * vy - dy * vx) < 1e-11);
    CHECK(dx * vx + dy * vy > 0.0);
    CHECK(b.theta1 > 0.0);
    CHECK(b.theta1 < kPi);
  }
  CHECK_THROWS_AS(bounce(om, 0.0, 0.0), TangentialShot);
  CHECK_THROWS_AS(bounce(om, 0.0, kPi), TangentialShot);
}

TEST_CASE("angle conservation on the caustic of Omega_{4,1/2}") {
  const auto om = make_omega_n_tau(4, 0.5);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> ua(0.0, kTwoPi);
  for (int i = 0; i < 1000; ++i) {
    const PhasePoint q = billiard_step(om, {ua(rng), kX4});
    CHECK(std::fabs(q.theta - kX4) <= 1e-9);
  }
}

TEST_CASE("Jacobian: finite differences, determinant, twist") {
  const auto curves = {make_omega_n_tau(4, 0.5), make_omega_n_tau(7, 0.3),
                       FourierCurve::make(1.0, {{3, 0.3, 0.0}, {5, 0.0, 0.1}})};
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ua(0.0, kTwoPi), ut(0.2, kPi - 0.2);
  for (const auto& c : curves) {
    for (int i = 0; i < 60; ++i) {
      const PhasePoint p{ua(rng), ut(rng)};
      const Jacobian j = billiard_jacobian(c, p);
      const Jacobian f = fd_jacobian(c, p);
      for (int r = 0; r < 2; ++r) {
        for (int s = 0; s < 2; ++s) {
          CHECK(std::fabs(j[r][s] - f[r][s]) <= 1e-5 * std::max(1.0, std::fabs(j[r][s])));
        }
      }
      const double det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
      const double th1 = bounce(c, p.alpha, p.theta).theta1;
      CHECK(std::fabs(det * std::sin(th1) - std::sin(p.theta)) < 1e-10);
      CHECK(j[0][1] > 0.0);
    }
  }
}

TEST_CASE("involution") {
  const auto om = make_omega_n_tau(6, 0.4);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> ua(0.0, kTwoPi), ut(0.05, kPi - 0.05);
  for (int i = 0; i < 200; ++i) {
    const PhasePoint p{ua(rng), ut(rng)};
    const PhasePoint q = billiard_step(om, p);
    const PhasePoint back = billiard_step(om, {q.alpha, kPi - q.theta});
    CHECK(std::fabs(wrap(back.alpha - p.alpha)) < 1e-9);
    CHECK(std::fabs(kPi - back.theta - p.theta) < 1e-9);
  }
}

TEST_CASE("iterate_on_caustic") {
  const auto cw = FourierCurve::make(1.0, {{3, 0.3, 0.0}, {5, 0.0, 0.1}});
  const auto s = iterate_on_caustic(cw, kPi / 2, 100);
  CHECK(std::fabs(s.rotation_estimate - 0.5) < 1e-12);
  CHECK(s.max_theta_drift <= 1e-10);
  CHECK(s.warnings.empty());

  const auto om = iterate_on_caustic(make_omega_n_tau(4, 0.5), kX4, 10000);
  CHECK(std::fabs(om.rotation_estimate - kX4 / kPi) < 1e-6);

  const auto disc = iterate_on_caustic(FourierCurve::circle(), 0.7, 1000);
  CHECK(std::fabs(disc.rotation_estimate - 0.7 / kPi) < 1e-9);

  CHECK_THROWS_AS(iterate_on_caustic(make_omega_n_tau(4, 0.5), kPi / 4, 10),
                  std::invalid_argument);
}

TEST_CASE("orbit dump format") {
  const auto orbit = trace_orbit(FourierCurve::circle(), {0.0, kPi / 2}, 2);
  REQUIRE(orbit.size() == 3);
  CHECK(orbit[2].alpha == doctest::Approx(2 * kPi));
  std::ostringstream os;
  write_orbit_dump(os, orbit);
  const std::string text = os.str();
  CHECK(text.rfind("step,alpha,theta,x,y\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 4);
}
