#pragma once

#include <gmpxx.h>

#include <cmath>
#include <complex>

namespace fv {

// Working precision of the thermodynamic layer. Extended precision keeps the
// large-|z| resolvent expansion and third finite differences above roundoff.
using Real = long double;
using Complex = std::complex<Real>;

inline constexpr Real kPi = 3.141592653589793238462643383279502884L;

// log of a positive integer without overflowing a double.
inline Real log_integer(const mpz_class& v) {
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, v.get_mpz_t());
  return std::log(static_cast<Real>(mantissa)) + static_cast<Real>(exponent) * std::log(2.0L);
}

// Nearest long double to an exact rational (two-term double split).
inline Real to_real(const mpq_class& v) {
  const double hi = v.get_d();
  const mpq_class rest = v - mpq_class(hi);
  return static_cast<Real>(hi) + static_cast<Real>(rest.get_d());
}

inline Real log_rational(const mpq_class& v) { return log_integer(v.get_num()) - log_integer(v.get_den()); }

}  // namespace fv
