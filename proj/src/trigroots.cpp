#include "caustics/trigroots.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <string>

#include <fmt/format.h>

#include "caustics/bracket.hpp"
#include "caustics/curve.hpp"

namespace caustics {

namespace {

void check_index(int n) {
  if (n < 2 || n > kMaxChainIndex) {
    throw std::out_of_range("chain index n=" + std::to_string(n) +
                            " outside [2, 2^20]");
  }
}

constexpr double kBisectionWidth = 1e-14;
constexpr int kPolishSteps = 5;

}  // namespace

double sin_eq_residual(int n, double delta) {
  return kernel_hat(n, delta);
}

double chain_function(int n, double x) {
  const double nm = n - 1.0;
  const double np = n + 1.0;
  return np * std::sin(nm * x) - nm * std::sin(np * x);
}

double chain_derivative(int n, double x) {
  const double nm = n - 1.0;
  const double np = n + 1.0;
  return np * nm * (std::cos(nm * x) - std::cos(np * x));
}

int root_count(int n) {
  check_index(n);
  return n % 2 == 0 ? n / 2 - 1 : (n - 1) / 2 - 1;
}

std::vector<BracketedRoot> solve_Bn(int n) {
  const int count = root_count(n);
  std::vector<BracketedRoot> out;
  out.reserve(count);
  const auto g = [n](double x) { return chain_function(n, x); };
  const auto dg = [n](double x) { return chain_derivative(n, x); };
  for (int k = 1; k <= count; ++k) {
    BracketedRoot r;
    r.n = n;
    r.k = k;
    r.lo = 2.0 * k * kPi / (2.0 * n);
    r.hi = (2.0 * k + 1.0) * kPi / (2.0 * n);
    const double glo = g(r.lo);
    const double ghi = g(r.hi);
    if (std::signbit(glo) == std::signbit(ghi) || glo == 0.0 || ghi == 0.0) {
      throw std::logic_error(fmt::format(
          "no sign change on bracket k={} for n={} (g={}, {})", k, n, glo,
          ghi));
    }
    auto res = detail::bisect_then_polish(g, dg, r.lo, r.hi, kBisectionWidth,
                                          kPolishSteps);
    r.value = std::clamp(res.root, std::nextafter(r.lo, r.hi),
                         std::nextafter(r.hi, r.lo));
    r.residual = std::fabs(sin_eq_residual(n, r.value));
    out.push_back(r);
  }
  return out;
}

AngleSet build_An(const std::vector<BracketedRoot>& roots, int n) {
  AngleSet set;
  set.n = n;
  set.members.reserve(2 * roots.size() + 1);
  for (const auto& r : roots) {
    set.members.push_back(r.value);
    set.members.push_back(kPi - r.value);
  }
  if (n % 2 == 1) {
    set.members.push_back(kPi / 2.0);
    set.includes_half_pi = true;
  }
  std::sort(set.members.begin(), set.members.end());
  return set;
}

AngleSet build_An(int n) { return build_An(solve_Bn(n), n); }

double density_gap(int n) {
  const AngleSet set = RootCache::shared().angles(n);
  double prev = 0.0;
  double gap = 0.0;
  for (double m : set.members) {
    gap = std::max(gap, m - prev);
    prev = m;
  }
  return std::max(gap, kPi - prev);
}

RootCache::Roots RootCache::roots(int n) {
  {
    std::shared_lock lock(mutex_);
    if (auto it = cache_.find(n); it != cache_.end()) return it->second;
  }
  auto fresh = std::make_shared<const std::vector<BracketedRoot>>(solve_Bn(n));
  std::unique_lock lock(mutex_);
  return cache_.emplace(n, std::move(fresh)).first->second;
}

AngleSet RootCache::angles(int n) { return build_An(*roots(n), n); }

RootCache& RootCache::shared() {
  static RootCache cache;
  return cache;
}

void write_roots_delimited(std::ostream& os,
                           const std::vector<BracketedRoot>& roots,
                           bool header) {
  if (header) os << "n,k,lo,hi,value,residual\n";
  for (const auto& r : roots) {
    os << fmt::format("{},{},{:.17g},{:.17g},{:.17g},{:.3e}\n", r.n, r.k, r.lo,
                      r.hi, r.value, r.residual);
  }
}

}  // namespace caustics
