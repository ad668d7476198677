#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace fv {

// Polynomial with exact rational coefficients. Coefficient i multiplies y^i,
// where y is the formal variable (x^{-1} throughout this library). Trailing
// zero coefficients are always trimmed, so the zero polynomial is empty.
class ExactPolynomial {
 public:
  ExactPolynomial() = default;
  explicit ExactPolynomial(std::vector<mpq_class> coefficients);
  static ExactPolynomial constant(const mpq_class& c);
  static ExactPolynomial monomial(const mpq_class& c, std::size_t power);

  const std::vector<mpq_class>& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  // Degree of the zero polynomial is reported as -1.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  // Coefficient of y^i; zero beyond the degree.
  mpq_class coefficient(std::size_t i) const;
  mpq_class leading_coefficient() const;
  // Lowest power with a nonzero coefficient; -1 for the zero polynomial.
  long valuation() const;

  mpq_class evaluate(const mpq_class& y) const;

  // Drops the lowest `k` powers, i.e. divides by y^k. Throws if any of the
  // dropped coefficients is nonzero.
  ExactPolynomial shifted_down(std::size_t k) const;

  ExactPolynomial& operator+=(const ExactPolynomial& rhs);
  ExactPolynomial& operator-=(const ExactPolynomial& rhs);
  ExactPolynomial& operator*=(const ExactPolynomial& rhs);
  ExactPolynomial& operator*=(const mpq_class& rhs);

  friend ExactPolynomial operator+(ExactPolynomial lhs, const ExactPolynomial& rhs) { return lhs += rhs; }
  friend ExactPolynomial operator-(ExactPolynomial lhs, const ExactPolynomial& rhs) { return lhs -= rhs; }
  friend ExactPolynomial operator*(ExactPolynomial lhs, const ExactPolynomial& rhs) { return lhs *= rhs; }
  friend ExactPolynomial operator*(ExactPolynomial lhs, const mpq_class& rhs) { return lhs *= rhs; }
  friend ExactPolynomial operator-(const ExactPolynomial& p);
  // Exact division; throws ConsistencyError when the remainder is nonzero.
  friend ExactPolynomial operator/(const ExactPolynomial& num, const ExactPolynomial& den);
  friend bool operator==(const ExactPolynomial& lhs, const ExactPolynomial& rhs) {
    return lhs.coeffs_ == rhs.coeffs_;
  }

  std::string to_string() const;

 private:
  void trim();
  std::vector<mpq_class> coeffs_;
};

}  // namespace fv
