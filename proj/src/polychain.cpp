#include "caustics/polychain.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "caustics/curve.hpp"
#include "caustics/trigroots.hpp"

namespace caustics {

namespace {

using cplx = std::complex<double>;

cplx ipow(cplx base, int e) {
  cplx acc = 1.0;
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

cplx i_power(int e) {
  switch (((e % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

void require(bool ok, const char* what, int n) {
  if (!ok) throw std::invalid_argument(fmt::format("{} (n = {})", what, n));
}

constexpr double kCircleResidualLimit = 1e-9;

}  // namespace

std::pair<IntPolynomial, IntPolynomial> pq_pair(int n) {
  require(n >= 1, "pq_pair needs n >= 1", n);
  IntPolynomial p{0, 1};
  IntPolynomial q{1};
  for (int i = 1; i < n; ++i) {
    IntPolynomial np = p + q.shift(1);
    IntPolynomial nq = q - p.shift(1);
    p = std::move(np);
    q = std::move(nq);
  }
  return {std::move(p), std::move(q)};
}

std::pair<cplx, cplx> pq_closed_eval(int n, cplx z) {
  require(n >= 1, "pq_closed_eval needs n >= 1", n);
  const cplx I{0.0, 1.0};
  const cplx zm = ipow(z - I, n);
  const cplx zp = ipow(z + I, n);
  const cplx p = -0.5 * (i_power(n + 1) * zm + i_power(-(n + 1)) * zp);
  const cplx q = 0.5 * (i_power(n) * zm + i_power(-n) * zp);
  return {p, q};
}

IntPolynomial r_poly(int n) {
  require(n >= 2, "r_poly needs n >= 2", n);
  auto [p, q] = pq_pair(n);
  return p - q.shift(1) * mpz_class(n);
}

IntPolynomial s_poly(int n) {
  require(n >= 2, "s_poly needs n >= 2", n);
  std::vector<mpz_class> c(static_cast<std::size_t>(n) + 2, mpz_class(0));
  c[0] = -(n - 1);
  c[1] = n + 1;
  c[static_cast<std::size_t>(n)] = -(n + 1);
  c[static_cast<std::size_t>(n) + 1] = n - 1;
  return IntPolynomial(std::move(c));
}

IntPolynomial reduced_s_poly(int n) {
  static const IntPolynomial cube{-1, 3, -3, 1};  // (x - 1)^3
  static const IntPolynomial plus_one{1, 1};
  IntPolynomial r = divide_exact(s_poly(n), cube);
  if (n % 2 == 1) r = divide_exact(r, plus_one);
  return r;
}

CircleRootSet s_roots_on_circle(int n) {
  require(n >= 2, "s_roots_on_circle needs n >= 2", n);
  CircleRootSet set;
  set.n = n;
  const IntPolynomial s = s_poly(n);
  // On |x| = 1, S_n(e^{i phi}) = -2i e^{i(n+1)phi/2} g(phi/2) with g the
  // chain function of trigroots, so the circle roots are phi = 2 delta for
  // delta in A_n; delta = pi/2 gives x = -1.
  const auto roots = RootCache::shared().roots(n);
  for (const auto& r : *roots) {
    set.phis.push_back(2.0 * r.value);
    set.phis.push_back(kTwoPi - 2.0 * r.value);
  }
  std::sort(set.phis.begin(), set.phis.end());
  for (double phi : set.phis) {
    const double res = std::abs(s.eval(std::polar(1.0, phi)));
    if (!(res <= kCircleResidualLimit)) {
      throw std::logic_error(fmt::format(
          "S_{} residual {:.3e} at phi = {} exceeds 1e-9", n, res, phi));
    }
    set.residuals.push_back(res);
  }
  set.minus_one_root = s.eval(mpz_class(-1)) == 0;
  return set;
}

cplx mobius_root_map(double z) {
  const cplx I{0.0, 1.0};
  return -(z - I) / (z + I);
}

PolyFamily parse_family(const std::string& name) {
  if (name == "P") return PolyFamily::P;
  if (name == "Q") return PolyFamily::Q;
  if (name == "R") return PolyFamily::R;
  if (name == "S") return PolyFamily::S;
  if (name == "Sred") return PolyFamily::Sred;
  throw std::invalid_argument("unknown polynomial family '" + name +
                              "' (expected P, Q, R, S, Sred)");
}

std::string family_name(PolyFamily f) {
  switch (f) {
    case PolyFamily::P: return "P";
    case PolyFamily::Q: return "Q";
    case PolyFamily::R: return "R";
    case PolyFamily::S: return "S";
    case PolyFamily::Sred: return "Sred";
  }
  return "?";
}

IntPolynomial family_poly(PolyFamily f, int n) {
  switch (f) {
    case PolyFamily::P: return pq_pair(n).first;
    case PolyFamily::Q: return pq_pair(n).second;
    case PolyFamily::R: return r_poly(n);
    case PolyFamily::S: return s_poly(n);
    case PolyFamily::Sred: return reduced_s_poly(n);
  }
  throw std::invalid_argument("unknown family");
}

std::string export_line(PolyFamily f, int n) {
  return fmt::format("{} {}: {}", family_name(f), n,
                     family_poly(f, n).to_string());
}

}  // namespace caustics
