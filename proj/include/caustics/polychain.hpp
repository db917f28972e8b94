#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "caustics/int_polynomial.hpp"

namespace caustics {

/// tan(n x) = P_n(tan x) / Q_n(tan x), built by
/// P_{n+1} = P_n + z Q_n, Q_{n+1} = Q_n - z P_n from P_1 = z, Q_1 = 1.
std::pair<IntPolynomial, IntPolynomial> pq_pair(int n);

/// (P_n(z), Q_n(z)) through the binomial closed forms
/// -2 P_n = i^{n+1} (z-i)^n + (-i)^{n+1} (z+i)^n,
///  2 Q_n = i^n (z-i)^n + (-i)^n (z+i)^n.
std::pair<std::complex<double>, std::complex<double>> pq_closed_eval(
    int n, std::complex<double> z);

/// R_n = P_n - n z Q_n; its positive roots are tan of the points of B_n.
IntPolynomial r_poly(int n);

/// S_n = (n-1)(x^{n+1} - 1) - (n+1)(x^n - x).
IntPolynomial s_poly(int n);

/// S_n with the factor (x-1)^3, and (x+1) for odd n, divided out exactly.
/// Throws std::domain_error if either division leaves a remainder.
IntPolynomial reduced_s_poly(int n);

/// Roots x = e^{i phi} of S_n other than +-1.
struct CircleRootSet {
  int n = 0;
  std::vector<double> phis;       // sorted, in (0, 2 pi) minus {pi}
  std::vector<double> residuals;  // |S_n(e^{i phi})|, aligned with phis
  bool minus_one_root = false;    // x = -1 is a (simple) root, odd n
};

/// Circle roots via phi = 2 xi, xi in B_n. Throws std::logic_error when a
/// residual exceeds 1e-9.
CircleRootSet s_roots_on_circle(int n);

/// x = -(z - i) / (z + i), mapping the real line onto the unit circle.
std::complex<double> mobius_root_map(double z);

enum class PolyFamily { P, Q, R, S, Sred };

PolyFamily parse_family(const std::string& name);
std::string family_name(PolyFamily f);
IntPolynomial family_poly(PolyFamily f, int n);

/// "<family> <n>: c0 c1 ... cd", ascending.
std::string export_line(PolyFamily f, int n);

}  // namespace caustics
