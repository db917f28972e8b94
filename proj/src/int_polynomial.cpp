#include "caustics/int_polynomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace caustics {

IntPolynomial::IntPolynomial(std::vector<mpz_class> coeffs)
    : coeffs_(std::move(coeffs)) {
  trim();
}

IntPolynomial::IntPolynomial(std::initializer_list<long> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (long c : coeffs) coeffs_.emplace_back(c);
  trim();
}

IntPolynomial IntPolynomial::monomial(mpz_class c, int degree) {
  std::vector<mpz_class> v(static_cast<std::size_t>(degree) + 1);
  v.back() = std::move(c);
  return IntPolynomial(std::move(v));
}

void IntPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

mpz_class IntPolynomial::coeff(int i) const {
  if (i < 0 || i > degree()) return 0;
  return coeffs_[static_cast<std::size_t>(i)];
}

IntPolynomial IntPolynomial::operator+(const IntPolynomial& o) const {
  std::vector<mpz_class> v(std::max(coeffs_.size(), o.coeffs_.size()));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) v[i] += coeffs_[i];
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) v[i] += o.coeffs_[i];
  return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::operator-() const {
  std::vector<mpz_class> v(coeffs_);
  for (auto& c : v) c = -c;
  return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::operator-(const IntPolynomial& o) const {
  return *this + (-o);
}

IntPolynomial IntPolynomial::operator*(const IntPolynomial& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<mpz_class> v(coeffs_.size() + o.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) {
      v[i + j] += coeffs_[i] * o.coeffs_[j];
    }
  }
  return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::operator*(const mpz_class& c) const {
  std::vector<mpz_class> v(coeffs_);
  for (auto& x : v) x *= c;
  return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::shift(int k) const {
  if (is_zero()) return {};
  std::vector<mpz_class> v(static_cast<std::size_t>(k), mpz_class(0));
  v.insert(v.end(), coeffs_.begin(), coeffs_.end());
  return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<mpz_class> v(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    v[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
  }
  return IntPolynomial(std::move(v));
}

mpz_class IntPolynomial::eval(const mpz_class& x) const {
  mpz_class acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * x + *it;
  }
  return acc;
}

std::complex<double> IntPolynomial::eval(std::complex<double> x) const {
  std::complex<double> acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * x + it->get_d();
  }
  return acc;
}

mpz_class IntPolynomial::content() const {
  mpz_class g = 0;
  for (const auto& c : coeffs_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

IntPolynomial IntPolynomial::primitive_part() const {
  if (is_zero()) return {};
  mpz_class g = content();
  if (leading() < 0) g = -g;
  std::vector<mpz_class> v(coeffs_);
  for (auto& c : v) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return IntPolynomial(std::move(v));
}

std::string IntPolynomial::to_string() const {
  if (is_zero()) return "0";
  std::string s;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) s += ' ';
    s += coeffs_[i].get_str();
  }
  return s;
}

DivMod divmod(const IntPolynomial& a, const IntPolynomial& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<mpz_class> rem = a.coeffs();
  const int db = b.degree();
  const int dq = a.degree() - db;
  if (dq < 0) return {{}, a};
  std::vector<mpz_class> quo(static_cast<std::size_t>(dq) + 1);
  const mpz_class& lb = b.leading();
  for (int i = dq; i >= 0; --i) {
    mpz_class& top = rem[static_cast<std::size_t>(i + db)];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lb.get_mpz_t())) {
      throw std::domain_error("division leaves Z[x]");
    }
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), top.get_mpz_t(), lb.get_mpz_t());
    for (int j = 0; j <= db; ++j) {
      rem[static_cast<std::size_t>(i + j)] -= q * b.coeffs()[static_cast<std::size_t>(j)];
    }
    quo[static_cast<std::size_t>(i)] = std::move(q);
  }
  return {IntPolynomial(std::move(quo)), IntPolynomial(std::move(rem))};
}

IntPolynomial divide_exact(const IntPolynomial& a, const IntPolynomial& b) {
  DivMod dm = divmod(a, b);
  if (!dm.remainder.is_zero()) {
    throw std::domain_error("nonzero remainder: " + dm.remainder.to_string());
  }
  return std::move(dm.quotient);
}

IntPolynomial pseudo_remainder(const IntPolynomial& a, const IntPolynomial& b) {
  if (b.is_zero()) throw std::domain_error("pseudo-remainder by zero");
  const int db = b.degree();
  if (a.degree() < db) return a;
  std::vector<mpz_class> rem = a.coeffs();
  const mpz_class& lb = b.leading();
  // One multiplication by lb per elimination step, deg a - deg b + 1 in all.
  for (int top = a.degree(); top >= db; --top) {
    const mpz_class lead = rem[static_cast<std::size_t>(top)];
    for (auto& c : rem) c *= lb;
    if (lead != 0) {
      const int off = top - db;
      for (int j = 0; j <= db; ++j) {
        rem[static_cast<std::size_t>(off + j)] -=
            lead * b.coeffs()[static_cast<std::size_t>(j)];
      }
    }
  }
  return IntPolynomial(std::move(rem));
}

IntPolynomial subresultant_gcd(const IntPolynomial& a_in,
                               const IntPolynomial& b_in) {
  if (a_in.is_zero()) return b_in.primitive_part();
  if (b_in.is_zero()) return a_in.primitive_part();
  IntPolynomial a = a_in;
  IntPolynomial b = b_in;
  if (a.degree() < b.degree()) std::swap(a, b);
  a = a.primitive_part();
  b = b.primitive_part();

  mpz_class g = 1;
  mpz_class h = 1;
  while (true) {
    const int delta = a.degree() - b.degree();
    IntPolynomial r = pseudo_remainder(a, b);
    if (r.is_zero()) break;
    if (r.degree() == 0) {
      b = IntPolynomial{1};
      break;
    }
    mpz_class hd;
    mpz_pow_ui(hd.get_mpz_t(), h.get_mpz_t(), static_cast<unsigned long>(delta));
    const mpz_class div = g * hd;
    std::vector<mpz_class> rc = r.coeffs();
    for (auto& x : rc) {
      mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), div.get_mpz_t());
    }
    a = std::move(b);
    b = IntPolynomial(std::move(rc));
    g = a.leading();
    // h <- g^delta / h^(delta - 1); unchanged when delta = 0.
    if (delta > 0) {
      mpz_class gd;
      mpz_pow_ui(gd.get_mpz_t(), g.get_mpz_t(),
                 static_cast<unsigned long>(delta));
      mpz_class hp;
      mpz_pow_ui(hp.get_mpz_t(), h.get_mpz_t(),
                 static_cast<unsigned long>(delta - 1));
      mpz_divexact(h.get_mpz_t(), gd.get_mpz_t(), hp.get_mpz_t());
    }
  }
  return b.primitive_part();
}

}  // namespace caustics
