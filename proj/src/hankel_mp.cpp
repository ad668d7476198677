#include "fivevertex/hankel_mp.hpp"

#include <mpfr.h>

#include <boost/multiprecision/mpfr.hpp>
#include <cmath>
#include <utility>
#include <vector>

#include "fivevertex/errors.hpp"

namespace fv::exact {

namespace {

using boost::multiprecision::mpfr_float;

class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned bits) : saved_(mpfr_float::default_precision()) {
    mpfr_float::default_precision(static_cast<unsigned>(std::ceil(bits * 0.30103)) + 1);
  }
  ~PrecisionScope() { mpfr_float::default_precision(saved_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

mpfr_float from_rational(const mpq_class& q) {
  mpfr_float out;
  mpfr_set_q(out.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return out;
}

// Exact rational image of the MPFR result, so runs at different precisions
// can be compared without rounding through long double.
mpq_class log_p_at_precision(const FiniteModel& model, const mpq_class& x, unsigned bits) {
  PrecisionScope scope(bits);
  const int n = model.N();
  const auto coeffs = hyper2f1_polynomial(model).coefficients();
  const mpfr_float inv_x = from_rational(1 / x);

  std::vector<mpfr_float> moments(static_cast<std::size_t>(2 * n - 1), mpfr_float(0));
  mpfr_float xk = 1;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const mpfr_float weight = from_rational(coeffs[k]) * xk;
    mpfr_float kp = 1;
    for (auto& moment : moments) {
      moment += kp * weight;
      kp *= -static_cast<long>(k);
    }
    xk *= inv_x;
  }

  std::vector<std::vector<mpfr_float>> a(static_cast<std::size_t>(n), std::vector<mpfr_float>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = moments[static_cast<std::size_t>(i + j)];

  mpfr_float log_det = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    std::size_t pivot = k;
    for (std::size_t i = k + 1; i < a.size(); ++i)
      if (abs(a[i][k]) > abs(a[pivot][k])) pivot = i;
    if (a[pivot][k] == 0) throw ConsistencyError("singular Hankel matrix");
    std::swap(a[k], a[pivot]);
    log_det += log(abs(a[k][k]));
    for (std::size_t i = k + 1; i < a.size(); ++i) {
      const mpfr_float f = a[i][k] / a[k][k];
      for (std::size_t j = k + 1; j < a.size(); ++j) a[i][j] -= f * a[k][j];
    }
  }
  const long shift = static_cast<long>(n) * (n - 1) / 2;
  const mpfr_float log_p =
      log_det + shift * log(from_rational(x)) + log(from_rational(mpq_class(factorial(n)) * tau_prefactor(model)));
  mpq_class out;
  mpfr_get_q(out.get_mpq_t(), log_p.backend().data());
  return out;
}

}  // namespace

HighPrecisionLogP log_p_high_precision(const FiniteModel& model, const mpq_class& x,
                                       const HighPrecisionOptions& options) {
  if (sgn(x) <= 0) throw DomainError("x must be positive");
  HighPrecisionLogP out;
  unsigned bits = options.initial_bits < 64 ? 64 : options.initial_bits;
  mpq_class previous = log_p_at_precision(model, x, bits);
  while (true) {
    const unsigned next_bits = bits * 2;
    const mpq_class current = log_p_at_precision(model, x, next_bits);
    out.disagreement = std::fabs(mpq_class(current - previous).get_d());
    out.log_p = to_real(current);
    out.bits = next_bits;
    if (out.disagreement <= options.agreement) return out;
    if (next_bits >= options.max_bits) {
      out.precision_warning = true;
      return out;
    }
    previous = current;
    bits = next_bits;
  }
}

Real log_p_exact(const FiniteModel& model, const mpq_class& x) {
  const long n = model.N();
  mpq_class xs = 1;
  for (long i = 0; i < n * (n - 1) / 2; ++i) xs *= x;
  return log_rational(tau_hankel(model, x) * xs);
}

}  // namespace fv::exact
