#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <utility>
#include <vector>

#include "fivevertex/polynomial.hpp"

namespace fv {

template <typename T>
using Matrix = std::vector<std::vector<T>>;

namespace detail {

inline bool is_zero(const mpz_class& v) { return sgn(v) == 0; }
inline bool is_zero(const mpq_class& v) { return sgn(v) == 0; }
inline bool is_zero(const ExactPolynomial& v) { return v.is_zero(); }

inline mpz_class exact_quotient(const mpz_class& num, const mpz_class& den) {
  mpz_class q;
  mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}
inline mpq_class exact_quotient(const mpq_class& num, const mpq_class& den) { return num / den; }
inline ExactPolynomial exact_quotient(const ExactPolynomial& num, const ExactPolynomial& den) {
  return num / den;
}

}  // namespace detail

// Fraction-free (Bareiss) determinant over an integral domain where every
// Bareiss quotient is exact: integers, rationals, or Q[y]. The matrix is taken
// by value and destroyed. `one` is the multiplicative identity of T.
template <typename T>
T bareiss_determinant(Matrix<T> m, const T& one) {
  const std::size_t n = m.size();
  if (n == 0) return one;
  T previous = one;
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (detail::is_zero(m[k][k])) {
      std::size_t pivot = k + 1;
      while (pivot < n && detail::is_zero(m[pivot][k])) ++pivot;
      if (pivot == n) return T{};
      std::swap(m[k], m[pivot]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        T cross = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        m[i][j] = detail::exact_quotient(cross, previous);
      }
    }
    previous = m[k][k];
  }
  T det = m[n - 1][n - 1];
  if (negate) det = T{} - det;
  return det;
}

}  // namespace fv
