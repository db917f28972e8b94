#pragma once

#include <complex>
#include <initializer_list>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace caustics {

/// Polynomial with arbitrary-precision integer coefficients, stored in
/// ascending degree. Canonical form: no trailing zeros; the zero polynomial
/// has no coefficients and degree -1.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<mpz_class> coeffs);
  IntPolynomial(std::initializer_list<long> coeffs);

  static IntPolynomial monomial(mpz_class c, int degree);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<mpz_class>& coeffs() const { return coeffs_; }
  /// Coefficient of x^i, zero beyond the degree.
  mpz_class coeff(int i) const;
  const mpz_class& leading() const { return coeffs_.back(); }

  IntPolynomial operator+(const IntPolynomial& o) const;
  IntPolynomial operator-(const IntPolynomial& o) const;
  IntPolynomial operator*(const IntPolynomial& o) const;
  IntPolynomial operator*(const mpz_class& c) const;
  IntPolynomial operator-() const;
  bool operator==(const IntPolynomial& o) const = default;

  /// p(x) * x^k.
  IntPolynomial shift(int k) const;
  IntPolynomial derivative() const;

  mpz_class eval(const mpz_class& x) const;
  std::complex<double> eval(std::complex<double> x) const;

  /// gcd of the coefficients, nonnegative.
  mpz_class content() const;
  /// Divided by its content, leading coefficient made positive.
  IntPolynomial primitive_part() const;

  /// Coefficients separated by single spaces, ascending.
  std::string to_string() const;

 private:
  void trim();
  std::vector<mpz_class> coeffs_;
};

struct DivMod {
  IntPolynomial quotient;
  IntPolynomial remainder;
};

/// Division over Z. Requires the divisor's leading coefficient to divide
/// every intermediate leading coefficient; throws std::domain_error otherwise.
DivMod divmod(const IntPolynomial& a, const IntPolynomial& b);

/// Quotient of an exact division; throws std::domain_error on a nonzero
/// remainder.
IntPolynomial divide_exact(const IntPolynomial& a, const IntPolynomial& b);

/// lc(b)^(deg a - deg b + 1) * a mod b, computed without fractions.
IntPolynomial pseudo_remainder(const IntPolynomial& a, const IntPolynomial& b);

/// gcd over Z[x] via the subresultant remainder sequence; primitive with a
/// positive leading coefficient. gcd(0, 0) = 0.
IntPolynomial subresultant_gcd(const IntPolynomial& a, const IntPolynomial& b);

}  // namespace caustics
