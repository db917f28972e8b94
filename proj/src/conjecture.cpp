#include "caustics/conjecture.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <utility>

#include <fmt/format.h>

#include "caustics/polychain.hpp"
#include "caustics/trigroots.hpp"

namespace caustics {

namespace {

GcdCertificate certify(int m, int n, const IntPolynomial& sm,
                       const IntPolynomial& sn) {
  GcdCertificate c;
  c.m = m;
  c.n = n;
  c.gcd = subresultant_gcd(sm, sn);
  // The certificate is only as good as this check.
  divide_exact(sm, c.gcd);
  divide_exact(sn, c.gcd);
  c.verdict = c.gcd.degree() == 0 ? Verdict::Disjoint : Verdict::Shared;
  if (c.verdict == Verdict::Shared) {
    const CircleRootSet roots = s_roots_on_circle(std::min(m, n));
    std::vector<std::pair<double, double>> scored;
    for (double phi : roots.phis) {
      scored.emplace_back(std::abs(c.gcd.eval(std::polar(1.0, phi))), phi);
    }
    std::sort(scored.begin(), scored.end());
    const auto d = static_cast<std::size_t>(c.gcd.degree());
    for (std::size_t i = 0; i < std::min(d, scored.size()); ++i) {
      c.common_roots.push_back(std::polar(1.0, scored[i].second));
    }
  }
  return c;
}

void check_pair(int m, int n) {
  if (m < 4 || n < 4 || m == n) {
    throw std::invalid_argument(
        fmt::format("pair ({}, {}) needs distinct indices >= 4", m, n));
  }
}

}  // namespace

std::string verdict_name(Verdict v) {
  return v == Verdict::Disjoint ? "disjoint" : "shared";
}

GcdCertificate pair_disjointness(int m, int n) {
  check_pair(m, n);
  return certify(m, n, reduced_s_poly(m), reduced_s_poly(n));
}

ScanSummary scan_disjointness(int n_max, unsigned threads) {
  ScanSummary sum;
  sum.n_max = n_max;
  if (n_max < 5) return sum;

  std::vector<IntPolynomial> reduced(static_cast<std::size_t>(n_max) + 1);
  for (int n = 4; n <= n_max; ++n) reduced[n] = reduced_s_poly(n);

  std::vector<std::pair<int, int>> pairs;
  for (int m = 4; m <= n_max; ++m) {
    for (int n = m + 1; n <= n_max; ++n) pairs.emplace_back(m, n);
  }
  sum.certificates.resize(pairs.size());

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(pairs.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < pairs.size(); i = next++) {
      const auto [m, n] = pairs[i];
      sum.certificates[i] = certify(m, n, reduced[m], reduced[n]);
    }
  };
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();

  for (const auto& c : sum.certificates) {
    (c.verdict == Verdict::Disjoint ? sum.disjoint : sum.shared)++;
  }
  return sum;
}

std::string ledger_line(const GcdCertificate& c) {
  return fmt::format("{} {} {} {}", c.m, c.n, verdict_name(c.verdict),
                     c.gcd.degree());
}

nlohmann::json certificate_to_json(const GcdCertificate& c) {
  nlohmann::json roots = nlohmann::json::array();
  for (const auto& r : c.common_roots) roots.push_back({r.real(), r.imag()});
  std::vector<std::string> coeffs;
  for (const auto& x : c.gcd.coeffs()) coeffs.push_back(x.get_str());
  return {{"m", c.m},
          {"n", c.n},
          {"verdict", verdict_name(c.verdict)},
          {"gcd_degree", c.gcd.degree()},
          {"gcd", coeffs},
          {"common_roots", roots}};
}

int append_ledger(const std::string& path,
                  const std::vector<GcdCertificate>& certs) {
  std::set<std::pair<int, int>> seen;
  {
    std::ifstream in(path);
    std::string line;
    while (std::getline(in, line)) {
      std::istringstream ls(line);
      int m = 0;
      int n = 0;
      if (ls >> m >> n) seen.emplace(m, n);
    }
  }
  std::ofstream out(path, std::ios::app);
  if (!out) throw std::runtime_error("cannot write ledger " + path);
  int written = 0;
  for (const auto& c : certs) {
    if (!seen.emplace(c.m, c.n).second) continue;
    out << ledger_line(c) << '\n';
    ++written;
  }
  return written;
}

int family_partner(SmallKFamily f, int n) {
  switch (f) {
    case SmallKFamily::NPlus1: return n + 1;
    case SmallKFamily::NPlus2: return n + 2;
    case SmallKFamily::Twice: return 2 * n;
    case SmallKFamily::Thrice: return 3 * n;
    case SmallKFamily::TwoNPlus1: return 2 * n + 1;
    case SmallKFamily::TwoNMinus1: return 2 * n - 1;
    case SmallKFamily::ThreeNPlus1: return 3 * n + 1;
    case SmallKFamily::ThreeNMinus1: return 3 * n - 1;
  }
  return 0;
}

std::string family_label(SmallKFamily f) {
  switch (f) {
    case SmallKFamily::NPlus1: return "n+1";
    case SmallKFamily::NPlus2: return "n+2";
    case SmallKFamily::Twice: return "2n";
    case SmallKFamily::Thrice: return "3n";
    case SmallKFamily::TwoNPlus1: return "2n+1";
    case SmallKFamily::TwoNMinus1: return "2n-1";
    case SmallKFamily::ThreeNPlus1: return "3n+1";
    case SmallKFamily::ThreeNMinus1: return "3n-1";
  }
  return "?";
}

const std::vector<SmallKFamily>& all_small_k_families() {
  static const std::vector<SmallKFamily> all{
      SmallKFamily::NPlus1,      SmallKFamily::NPlus2,
      SmallKFamily::Twice,       SmallKFamily::Thrice,
      SmallKFamily::TwoNPlus1,   SmallKFamily::TwoNMinus1,
      SmallKFamily::ThreeNPlus1, SmallKFamily::ThreeNMinus1};
  return all;
}

double small_k_numeric_check(int n, SmallKFamily family) {
  if (n < 4) throw std::invalid_argument("small_k_numeric_check needs n >= 4");
  const int partner = family_partner(family, n);
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (partner < 4) return inf;
  auto& cache = RootCache::shared();
  const auto a = cache.roots(n);
  const auto b = cache.roots(partner);
  double best = inf;
  for (const auto& x : *a) {
    for (const auto& y : *b) best = std::min(best, std::fabs(x.value - y.value));
  }
  return best;
}

double min_sin_eq_residual(double delta, int n_max, int* argmin) {
  double best = std::numeric_limits<double>::infinity();
  int at = 0;
  for (int n = 2; n <= n_max; ++n) {
    const double r = std::fabs(sin_eq_residual(n, delta));
    if (r < best) {
      best = r;
      at = n;
    }
  }
  if (argmin) *argmin = at;
  return best;
}

namespace {

ExactSine exact_sine(int j, int q) {
  const int r = ((j % (2 * q)) + 2 * q) % (2 * q);
  if (q == 4) {
    static constexpr ExactSine t[8] = {{0, 0},  {1, 1},  {1, 3},  {1, 1},
                                       {0, 0},  {-1, 1}, {-1, 3}, {-1, 1}};
    return t[r];
  }
  static constexpr ExactSine t[6] = {{0, 0}, {1, 2},  {1, 2},
                                     {0, 0}, {-1, 2}, {-1, 2}};
  return t[r];
}

std::string describe(ExactSine s) {
  static const char* mags[] = {"0", "sqrt2/2", "sqrt3/2", "1"};
  if (s.sign == 0) return "0";
  return std::string(s.sign < 0 ? "-" : "+") + mags[s.magnitude];
}

// sin((n-1)d)/(n-1) = sin((n+1)d)/(n+1)  <=>  (n+1) lo = (n-1) up, with the
// ratio (n+1)/(n-1) rational and never 1 for n >= 2.
ResidueCase decide(int modulus, int residue, int q) {
  ResidueCase c;
  c.modulus = modulus;
  c.residue = residue;
  c.lower = exact_sine(residue - 1, q);
  c.upper = exact_sine(residue + 1, q);
  if (c.lower.sign == 0 && c.upper.sign == 0) {
    c.equation_holds = true;
    c.reason = "both numerators vanish";
  } else if (c.lower.sign == 0 || c.upper.sign == 0) {
    c.reason = "one numerator vanishes, the other does not";
  } else if (c.lower.magnitude != c.upper.magnitude) {
    c.reason = "numerator ratio is irrational, denominator ratio rational";
  } else if (c.lower.sign != c.upper.sign) {
    c.reason = "numerators have opposite signs";
  } else {
    c.reason = "equal numerators over distinct denominators n-1, n+1";
  }
  c.reason = fmt::format("sin((n-1)d)={}, sin((n+1)d)={}: {}",
                         describe(c.lower), describe(c.upper), c.reason);
  return c;
}

}  // namespace

SpecialAngleReport special_angle_exclusion(SpecialAngle angle, int n_max) {
  if (n_max < 2) throw std::invalid_argument("n_max must be >= 2");
  const int q = angle == SpecialAngle::PiOver4 ? 4 : 3;
  SpecialAngleReport rep;
  rep.delta = kPi / q;
  rep.n_max = n_max;
  rep.min_residual = min_sin_eq_residual(rep.delta, n_max, &rep.argmin_n);
  rep.exact_exclusion = true;
  for (int r = 0; r < 2 * q; ++r) {
    rep.cases.push_back(decide(2 * q, r, q));
    if (rep.cases.back().equation_holds) rep.exact_exclusion = false;
  }
  return rep;
}

ConvergentReport continued_fraction(double value, int depth) {
  if (!std::isfinite(value) || value < 0.0) {
    throw std::invalid_argument("continued_fraction needs a finite value >= 0");
  }
  ConvergentReport rep;
  rep.value = value;

  // value = mant * 2^exp exactly.
  int exp = 0;
  const double frac = std::frexp(value, &exp);
  mpz_class num(std::ldexp(frac, 53));
  mpz_class den = 1;
  exp -= 53;
  if (exp >= 0) {
    num <<= static_cast<mp_bitcnt_t>(exp);
  } else {
    den <<= static_cast<mp_bitcnt_t>(-exp);
  }
  const mpq_class exact(num, den);

  // Two previous convergents, seeded with p/q = 0/1 and 1/0.
  mpz_class p2 = 0, p1 = 1;
  mpz_class q2 = 1, q1 = 0;
  mpz_class a_num = num;
  mpz_class a_den = den;
  rep.min_quality = std::numeric_limits<double>::infinity();
  for (int i = 0; i < depth; ++i) {
    mpz_class a;
    mpz_class rem;
    mpz_fdiv_qr(a.get_mpz_t(), rem.get_mpz_t(), a_num.get_mpz_t(),
                a_den.get_mpz_t());
    mpz_class pn = a * p1 + p2;
    mpz_class qn = a * q1 + q2;
    if (qn > kConvergentDenominatorBound) {
      rep.truncated = true;
      break;
    }
    p2 = std::exchange(p1, pn);
    q2 = std::exchange(q1, qn);
    rep.convergents.push_back({pn, qn});
    if (rem == 0) {
      rep.exact_rational = true;
      break;
    }
    const mpq_class err = abs(exact - mpq_class(pn, qn)) * qn * qn;
    rep.min_quality = std::min(rep.min_quality, err.get_d());
    a_num = a_den;
    a_den = rem;
  }
  return rep;
}

ConvergentReport irrationality_evidence(int n, int k, int depth) {
  const auto roots = RootCache::shared().roots(n);
  if (k < 1 || k > static_cast<int>(roots->size())) {
    throw std::invalid_argument(
        fmt::format("B_{} has no root with index {}", n, k));
  }
  return continued_fraction((*roots)[static_cast<std::size_t>(k - 1)].value /
                                kPi,
                            depth);
}

std::string class_name(TableClass c) {
  switch (c) {
    case TableClass::Circle: return "circle";
    case TableClass::ConstantWidth: return "constant-width";
    case TableClass::OmegaNTau: return "omega-n-tau";
    case TableClass::NoCaustic: return "no-constant-angle-caustic";
  }
  return "?";
}

Classification conditional_classification(const FourierCurve& curve,
                                          int n_max) {
  Classification out;
  out.n_max = n_max;
  out.condition = fmt::format(
      "conditional on disjointness certificates up to n_max = {}", n_max);
  if (curve.is_circle()) {
    out.table_class = TableClass::Circle;
    out.constant_width = true;
    return out;
  }
  std::vector<Harmonic> active;
  for (const auto& h : curve.harmonics()) {
    if (h.active()) active.push_back(h);
  }
  out.constant_width = std::all_of(active.begin(), active.end(),
                                   [](const Harmonic& h) { return h.k % 2; });
  out.covered = curve.max_index() <= n_max;

  // Candidate angles come from the chains of the active indices; the kernel
  // test keeps those that every harmonic accepts.
  auto& cache = RootCache::shared();
  std::vector<double> candidates;
  for (const auto& h : active) {
    for (double d : cache.angles(h.k).members) candidates.push_back(d);
  }
  std::sort(candidates.begin(), candidates.end());
  for (double d : candidates) {
    if (!out.deltas.empty() && std::fabs(out.deltas.back() - d) < 1e-12) {
      continue;
    }
    if (has_constant_caustic(curve, d).exists) out.deltas.push_back(d);
  }

  for (std::size_t i = 0; i < active.size(); ++i) {
    for (std::size_t j = i + 1; j < active.size(); ++j) {
      if (active[i].k >= 4 && active[j].k >= 4) {
        out.certificates.push_back(pair_disjointness(active[i].k, active[j].k));
      }
    }
  }

  if (active.size() == 1) {
    const Harmonic& h = active.front();
    out.n = h.k;
    out.tau = h.amplitude() / curve.c0();
    out.phase = std::atan2(h.a, h.b) / h.k;
    if (h.k >= 4) {
      out.table_class = TableClass::OmegaNTau;
    } else if (h.k == 3) {
      out.table_class = TableClass::ConstantWidth;
    } else {
      out.table_class = TableClass::NoCaustic;
    }
    return out;
  }
  out.table_class =
      out.constant_width ? TableClass::ConstantWidth : TableClass::NoCaustic;
  return out;
}

}  // namespace caustics
