#pragma once

#include <iosfwd>
#include <map>
#include <memory>
#include <shared_mutex>
#include <vector>

namespace caustics {

/// Largest n accepted by the solvers; beyond it (n +- 1) * x loses the
/// precision the residual bound relies on.
constexpr int kMaxChainIndex = 1 << 20;

/// Root xi_k of tan(n x) = n tan(x) isolated in (k pi / n, (k + 1/2) pi / n).
struct BracketedRoot {
  int n = 0;
  int k = 0;
  double lo = 0.0;
  double hi = 0.0;
  double value = 0.0;
  double residual = 0.0;  // |sin_eq_residual(n, value)|
};

/// A_n: the solutions in (0, pi) of the sine equation for a fixed n.
struct AngleSet {
  int n = 0;
  std::vector<double> members;  // sorted
  bool includes_half_pi = false;
};

/// sin((n-1)d)/(n-1) - sin((n+1)d)/(n+1).
double sin_eq_residual(int n, double delta);

/// (n+1) sin((n-1)x) - (n-1) sin((n+1)x); same zeros as sin_eq_residual,
/// entire in x.
double chain_function(int n, double x);
double chain_derivative(int n, double x);

/// Number of roots of tan(n x) = n tan(x) in (0, pi/2).
int root_count(int n);

/// Certified roots in (0, pi/2). Throws std::logic_error if a bracket lacks a
/// sign change and std::out_of_range for n outside [2, kMaxChainIndex].
std::vector<BracketedRoot> solve_Bn(int n);

AngleSet build_An(int n);
AngleSet build_An(const std::vector<BracketedRoot>& roots, int n);

/// Largest gap between consecutive points of A_n together with 0 and pi.
double density_gap(int n);

/// Memoizes solve_Bn per n. Concurrent readers and racing inserts of the same
/// n are fine: the first stored vector wins and both are identical.
class RootCache {
 public:
  using Roots = std::shared_ptr<const std::vector<BracketedRoot>>;

  Roots roots(int n);
  AngleSet angles(int n);

  static RootCache& shared();

 private:
  std::shared_mutex mutex_;
  std::map<int, Roots> cache_;
};

void write_roots_delimited(std::ostream& os,
                           const std::vector<BracketedRoot>& roots,
                           bool header = true);

}  // namespace caustics
