#pragma once

#include <complex>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "caustics/curve.hpp"
#include "caustics/int_polynomial.hpp"

namespace caustics {

enum class Verdict { Disjoint, Shared };

std::string verdict_name(Verdict v);

/// Exact record that the complex roots of S_m and S_n are (or are not)
/// disjoint, via the integer gcd of the reduced polynomials.
struct GcdCertificate {
  int m = 0;
  int n = 0;
  IntPolynomial gcd;
  Verdict verdict = Verdict::Disjoint;
  std::vector<std::complex<double>> common_roots;  // empty when disjoint
};

/// Accepts either order; both indices must be >= 4 and distinct.
GcdCertificate pair_disjointness(int m, int n);

struct ScanSummary {
  int n_max = 0;
  std::vector<GcdCertificate> certificates;  // sorted by (m, n)
  int disjoint = 0;
  int shared = 0;

  bool all_disjoint() const { return shared == 0; }
};

/// Every pair 4 <= m < n <= n_max, computed on `threads` workers (0 picks the
/// hardware concurrency); the result order does not depend on scheduling.
ScanSummary scan_disjointness(int n_max, unsigned threads = 0);

/// "m n verdict gcd-degree"
std::string ledger_line(const GcdCertificate& c);
nlohmann::json certificate_to_json(const GcdCertificate& c);

/// Appends certificates whose (m, n) is not already present in the ledger at
/// `path`. Returns the number of lines written.
int append_ledger(const std::string& path,
                  const std::vector<GcdCertificate>& certs);

/// Pair families (n, partner) with no common nontrivial solutions.
enum class SmallKFamily {
  NPlus1,
  NPlus2,
  Twice,
  Thrice,
  TwoNPlus1,
  TwoNMinus1,
  ThreeNPlus1,
  ThreeNMinus1,
};

int family_partner(SmallKFamily f, int n);
std::string family_label(SmallKFamily f);
const std::vector<SmallKFamily>& all_small_k_families();

/// min |xi - eta| over xi in B_n, eta in B_partner; +inf when either is empty.
double small_k_numeric_check(int n, SmallKFamily family);

enum class SpecialAngle { PiOver4, PiOver3 };

/// Exact value class of sin(j pi / q): sign in {-1, 0, 1} times one of the
/// magnitudes 0, sqrt(2)/2, sqrt(3)/2, 1.
struct ExactSine {
  int sign = 0;
  int magnitude = 0;  // 0: zero, 1: sqrt(2)/2, 2: sqrt(3)/2, 3: one
};

struct ResidueCase {
  int modulus = 0;
  int residue = 0;
  ExactSine lower;  // sin((n-1) delta)
  ExactSine upper;  // sin((n+1) delta)
  bool equation_holds = false;
  std::string reason;
};

struct SpecialAngleReport {
  double delta = 0.0;
  int n_max = 0;
  double min_residual = 0.0;
  int argmin_n = 0;
  std::vector<ResidueCase> cases;
  bool exact_exclusion = false;  // no residue class satisfies the equation
};

/// Numeric scan of |sin_eq_residual(n, delta)| for 2 <= n <= n_max plus the
/// exact residue-class argument.
SpecialAngleReport special_angle_exclusion(SpecialAngle angle, int n_max);

/// min over 2 <= n <= n_max of |sin_eq_residual(n, delta)|, any delta.
double min_sin_eq_residual(double delta, int n_max, int* argmin = nullptr);

struct Convergent {
  mpz_class p;
  mpz_class q;
};

struct ConvergentReport {
  double value = 0.0;
  std::vector<Convergent> convergents;
  double min_quality = 0.0;  // min q^2 |value - p/q| over non-terminal ones
  bool exact_rational = false;  // expansion terminated within the q bound
  bool truncated = false;       // stopped by the q bound before `depth`
};

constexpr double kConvergentDenominatorBound = 1e7;

/// Continued fraction of the binary rational stored in `value` (which must be
/// finite and nonnegative).
ConvergentReport continued_fraction(double value, int depth);

/// Convergents of xi_k / pi for the k-th root of B_n.
ConvergentReport irrationality_evidence(int n, int k, int depth);

enum class TableClass { Circle, ConstantWidth, OmegaNTau, NoCaustic };

std::string class_name(TableClass c);

struct Classification {
  TableClass table_class = TableClass::NoCaustic;
  int n_max = 0;
  std::string condition;  // certificate range the verdict rests on
  int n = 0;              // OmegaNTau only
  double tau = 0.0;
  double phase = 0.0;     // rho = c0 (1 + tau sin n(alpha + phase))
  bool constant_width = false;
  std::vector<double> deltas;  // caustic angles found
  std::vector<GcdCertificate> certificates;  // pairs of active harmonics
  bool covered = true;  // every active index <= n_max
};

Classification conditional_classification(const FourierCurve& curve,
                                          int n_max);

}  // namespace caustics
