#pragma once

#include <cmath>
#include <stdexcept>

namespace caustics::detail {

struct BracketResult {
  double root = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

/// Bisection on a sign-changing bracket [lo, hi] down to width `tol`,
/// followed by at most `polish` Newton steps that are kept only while they
/// stay inside the final bracket and reduce |f|.
template <class F, class DF>
BracketResult bisect_then_polish(F&& f, DF&& df, double lo, double hi,
                                 double tol, int polish = 5) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return {lo, lo, lo};
  if (fhi == 0.0) return {hi, hi, hi};
  if (std::signbit(flo) == std::signbit(fhi)) {
    throw std::logic_error("bracket has no sign change");
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return {mid, mid, mid};
    if (std::signbit(fm) == std::signbit(flo)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  double x = 0.5 * (lo + hi);
  double fx = f(x);
  const double a = lo - tol;
  const double b = hi + tol;
  for (int i = 0; i < polish && fx != 0.0; ++i) {
    const double d = df(x);
    if (d == 0.0 || !std::isfinite(d)) break;
    const double next = x - fx / d;
    if (!(next > a && next < b)) break;
    const double fn = f(next);
    if (!(std::fabs(fn) < std::fabs(fx))) break;
    x = next;
    fx = fn;
  }
  return {x, lo, hi};
}

}  // namespace caustics::detail
