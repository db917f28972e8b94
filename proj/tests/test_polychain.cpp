#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "caustics/curve.hpp"
#include "caustics/polychain.hpp"
#include "caustics/trigroots.hpp"

using namespace caustics;
using cplx = std::complex<double>;

namespace {
mpq_class eval_q(const IntPolynomial& p, const mpq_class& x) {
  mpq_class acc = 0;
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) acc = acc * x + *it;
  return acc;
}
}  // namespace

TEST_CASE("P and Q from the recurrence") {
  auto [p2, q2] = pq_pair(2);
  CHECK(p2 == IntPolynomial{0, 2});
  CHECK(q2 == IntPolynomial{1, 0, -1});
  CHECK(pq_pair(5).first == IntPolynomial{0, 5, 0, -10, 0, 1});
  CHECK(pq_pair(4).second == IntPolynomial{1, 0, -6, 0, 1});
  CHECK(pq_pair(4).first == IntPolynomial{0, 4, 0, -4});
  CHECK(pq_pair(5).second == IntPolynomial{1, 0, -10, 0, 5});
  // tan(n x) = P_n / Q_n at tan x.
  for (int n = 1; n <= 12; ++n) {
    const auto [p, q] = pq_pair(n);
    const double x = 0.123;
    const cplx z = std::tan(x);
    CHECK(std::abs(p.eval(z) / q.eval(z) - std::tan(n * x)) < 1e-10);
  }
}

TEST_CASE("closed forms agree with the recurrence") {
  auto v = pq_closed_eval(1, 3.0);
  CHECK(std::abs(v.first - 3.0) < 1e-14);
  CHECK(std::abs(v.second - 1.0) < 1e-14);
  v = pq_closed_eval(5, 1.0);
  CHECK(std::abs(v.first + 4.0) < 1e-12);
  CHECK(std::abs(v.second + 4.0) < 1e-12);
  v = pq_closed_eval(4, 0.0);
  CHECK(std::abs(v.first) < 1e-14);
  CHECK(std::abs(v.second - 1.0) < 1e-14);

  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> r(0.0, 2.0), t(0.0, kTwoPi);
  for (int n = 1; n <= 30; ++n) {
    const auto [p, q] = pq_pair(n);
    for (int i = 0; i < 100; ++i) {
      const cplx z = std::polar(r(rng), t(rng));
      const auto [cp, cq] = pq_closed_eval(n, z);
      const cplx ep = p.eval(z), eq = q.eval(z);
      CHECK(std::abs(cp - ep) <= 1e-10 * std::max(1.0, std::abs(ep)));
      CHECK(std::abs(cq - eq) <= 1e-10 * std::max(1.0, std::abs(eq)));
    }
  }
}

TEST_CASE("R_n") {
  CHECK(r_poly(4) == IntPolynomial{0, 0, 0, 20, 0, -4});
  for (int n = 2; n <= 200; ++n) {
    const IntPolynomial r = r_poly(n);
    for (int i = 0; i <= r.degree(); i += 2) CHECK(r.coeff(i) == 0);  // odd
    CHECK(r.coeff(1) == 0);
    CHECK(r.coeff(3) != 0);  // exactly z^3
    CHECK(r.degree() == (n % 2 == 0 ? n + 1 : n));
    // Observed leading magnitudes: n for even n, n^2 - 1 for odd n.
    mpz_class lead = abs(r.leading());
    CHECK(lead == (n % 2 == 0 ? mpz_class(n) : mpz_class(n) * n - 1));
  }
  // Positive roots are tan of B_n: exact sign change of R_n across
  // tan(xi) (1 -+ 1e-9), and no further positive roots (Descartes bound).
  for (int n = 2; n <= 60; ++n) {
    const IntPolynomial r = r_poly(n);
    const auto roots = solve_Bn(n);
    for (const auto& b : roots) {
      const double z = std::tan(b.value);
      CHECK(sgn(eval_q(r, mpq_class(z * (1 - 1e-9)))) != sgn(eval_q(r, mpq_class(z * (1 + 1e-9)))));
    }
    int changes = 0, last = 0;
    for (const auto& c : r.coeffs()) {
      if (c == 0) continue;
      if (last != 0 && sgn(c) != last) ++changes;
      last = sgn(c);
    }
    CHECK(changes == static_cast<int>(roots.size()));
  }
}

TEST_CASE("S_n and its reduction") {
  CHECK(s_poly(4) == IntPolynomial{-3, 5, 0, 0, -5, 3});
  CHECK(s_poly(2) == IntPolynomial{-1, 3, -3, 1});
  CHECK(reduced_s_poly(4) == IntPolynomial{3, 4, 3});
  CHECK(reduced_s_poly(2) == IntPolynomial{1});
  CHECK(reduced_s_poly(5).degree() == 2);  // (x+1) is divided out for odd n
  for (int n = 2; n <= 500; ++n) {
    const IntPolynomial s = s_poly(n);
    auto rev = s.coeffs();
    std::reverse(rev.begin(), rev.end());
    for (auto& c : rev) c = -c;
    CHECK(IntPolynomial(rev) == s);
    const mpz_class one(1);
    CHECK(s.eval(one) == 0);
    CHECK(s.derivative().eval(one) == 0);
    CHECK(s.derivative().derivative().eval(one) == 0);
    CHECK(s.derivative().derivative().derivative().eval(one) != 0);
    if (n >= 4 && n <= 100) CHECK(reduced_s_poly(n).degree() == (n % 2 == 0 ? n - 2 : n - 3));
  }
}

TEST_CASE("circle roots") {
  const auto c4 = s_roots_on_circle(4);
  REQUIRE(c4.phis.size() == 2);
  const cplx expect(-2.0 / 3.0, std::sqrt(5.0) / 3.0);
  CHECK(std::abs(std::polar(1.0, c4.phis[0]) - expect) < 1e-14);
  CHECK(std::abs(reduced_s_poly(4).eval(expect)) < 1e-14);
  CHECK_FALSE(c4.minus_one_root);

  const auto c5 = s_roots_on_circle(5);
  CHECK(c5.phis.size() == 2);
  CHECK(c5.minus_one_root);
  CHECK(s_roots_on_circle(2).phis.empty());

  for (int n = 4; n <= 100; ++n) {
    const auto c = s_roots_on_circle(n);
    // Simple circle roots: n - 2 for even n, n - 3 besides -1 for odd n.
    CHECK(static_cast<int>(c.phis.size()) == (n % 2 == 0 ? n - 2 : n - 3));
    CHECK(c.minus_one_root == (n % 2 == 1));
    for (double r : c.residuals) CHECK(r <= 1e-9);
    // Every circle root is a root of the reduced polynomial.
    const IntPolynomial red = reduced_s_poly(n);
    for (double phi : c.phis) CHECK(std::abs(red.eval(std::polar(1.0, phi))) < 1e-6);
  }
}

TEST_CASE("Mobius correspondence") {
  const cplx m = mobius_root_map(std::sqrt(5.0));
  CHECK(std::abs(m - cplx(-2.0 / 3.0, std::sqrt(5.0) / 3.0)) < 1e-15);
  // z = tan(xi) lands on e^{2 i xi}: 0 -> 1 (the triple root), infinity -> -1.
  CHECK(std::abs(mobius_root_map(0.0) - 1.0) < 1e-15);
  CHECK(std::abs(mobius_root_map(1e12) + 1.0) < 1e-11);
  for (int n = 4; n <= 100; ++n) {
    const auto c = s_roots_on_circle(n);
    for (const auto& b : solve_Bn(n)) {
      const cplx x = mobius_root_map(std::tan(b.value));
      CHECK(std::fabs(std::abs(x) - 1.0) < 1e-14);
      CHECK(x.imag() > 0.0);
      double best = 1e9;
      for (double phi : c.phis) best = std::min(best, std::abs(std::polar(1.0, phi) - x));
      CHECK(best < 1e-9);
    }
  }
}

TEST_CASE("families and export") {
  CHECK(export_line(PolyFamily::S, 4) == "S 4: -3 5 0 0 -5 3");
  CHECK(export_line(PolyFamily::Sred, 4) == "Sred 4: 3 4 3");
  CHECK(export_line(PolyFamily::P, 5) == "P 5: 0 5 0 -10 0 1");
  CHECK(parse_family("Q") == PolyFamily::Q);
  CHECK_THROWS_AS(parse_family("T"), std::invalid_argument);
  CHECK_THROWS_AS(r_poly(1), std::invalid_argument);
}
