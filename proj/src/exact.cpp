#include "fivevertex/exact.hpp"

#include <cmath>
#include <functional>
#include <string>

#include "fivevertex/bareiss.hpp"
#include "fivevertex/errors.hpp"
#include "fivevertex/numeric.hpp"

namespace fv::exact {

FiniteModel::FiniteModel(int n, int m, int l) : n_(n), m_(m), l_(l) {
  if (n < 1) throw DomainError("N must be positive");
  if (m < 1) throw DomainError("M must be positive");
  if (l < 2) throw DomainError("L must be at least 2");
  if (n > m) throw DomainError("N exceeds M");
  if (n > l - 1) throw DomainError("N exceeds L-1");
}

WeightParams::WeightParams(double x_, double delta_, double alpha_) : x(x_), delta(delta_), alpha(alpha_) {
  if (!(std::isfinite(x) && x > 0)) throw DomainError("x must be positive and finite");
  if (!std::isfinite(delta) || delta == 0) throw DomainError("delta must be nonzero and finite");
  if (!(std::isfinite(alpha) && alpha >= 0)) throw DomainError("alpha must be nonnegative");
  const bool consistent = (x < 1 && delta < 0) || (x > 1 && delta > 0);
  if (!consistent) throw DomainError("x and delta violate the sign-consistent parametrization");
}

namespace {

// lcm of the denominators, so that scale * v is integral for every v.
mpz_class common_denominator(const std::vector<mpq_class>& values) {
  mpz_class d = 1;
  for (const auto& v : values) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), v.get_den_mpz_t());
  return d;
}

std::vector<mpz_class> scaled_to_integers(const std::vector<mpq_class>& values, const mpz_class& scale) {
  std::vector<mpz_class> out;
  out.reserve(values.size());
  for (const auto& v : values) {
    mpq_class s = v * scale;
    out.push_back(s.get_num());
  }
  return out;
}

mpq_class power(const mpq_class& base, long e) {
  mpz_class num, den;
  const unsigned long ue = static_cast<unsigned long>(e < 0 ? -e : e);
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), ue);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), ue);
  mpq_class out = e >= 0 ? mpq_class(num, den) : mpq_class(den, num);
  out.canonicalize();
  return out;
}

// nu(k) for all sites, via the hypergeometric coefficients times x^{-k}.
std::vector<mpq_class> site_weights(const FiniteModel& model, const mpq_class& x) {
  const auto coeffs = hyper2f1_polynomial(model).coefficients();
  std::vector<mpq_class> out(static_cast<std::size_t>(model.max_site()) + 1);
  const mpq_class inv = 1 / x;
  mpq_class xk = 1;
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = (k < coeffs.size() ? coeffs[k] : mpq_class(0)) * xk;
    xk *= inv;
  }
  return out;
}

mpq_class hankel_scalar_factor(const FiniteModel& model) {
  return mpq_class(factorial(model.N())) * tau_prefactor(model);
}

void require_positive(const mpq_class& x) {
  if (sgn(x) <= 0) throw DomainError("x must be positive");
}

}  // namespace

mpq_class tau_prefactor(const FiniteModel& model) {
  const long n = model.N(), m = model.M(), l = model.L();
  const mpz_class den = factorial(l - 2) * factorial(m - 1);
  mpq_class c = 1;
  for (long j = 0; j < n; ++j) c *= mpq_class(factorial(l - n + j - 1) * factorial(m - n + j), den);
  c.canonicalize();
  return c;
}

mpq_class loggas_weight(const FiniteModel& model, int k, const mpq_class& x) {
  require_positive(x);
  if (k < 0 || k > model.max_site())
    throw DomainError("site k=" + std::to_string(k) + " outside [0, " + std::to_string(model.max_site()) + "]");
  mpq_class w(binomial(model.L() - 2, k) * binomial(model.M() - 1, k), k + 1);
  w.canonicalize();
  return w * power(x, -k);
}

std::uint64_t loggas_work_estimate(const FiniteModel& model) {
  mpz_class work = binomial(model.max_site() + 1, model.N()) * factorial(model.N());
  if (!work.fits_ulong_p()) return UINT64_MAX;
  return work.get_ui();
}

mpq_class tau_loggas(const FiniteModel& model, const mpq_class& x, std::uint64_t budget) {
  require_positive(x);
  const std::uint64_t work = loggas_work_estimate(model);
  if (work > budget) throw BudgetExceeded(work, budget);

  const int n = model.N(), m = model.max_site();
  std::vector<mpq_class> nu(static_cast<std::size_t>(m) + 1);
  for (int k = 0; k <= m; ++k) nu[static_cast<std::size_t>(k)] = loggas_weight(model, k, x);
  const mpz_class scale = common_denominator(nu);
  const std::vector<mpz_class> weight = scaled_to_integers(nu, scale);

  // Depth-first over k_1 < ... < k_N carrying the partial product.
  std::vector<int> sites(static_cast<std::size_t>(n));
  mpz_class total = 0;
  std::function<void(int, int, const mpz_class&)> visit = [&](int depth, int start, const mpz_class& partial) {
    if (depth == n) {
      total += partial;
      return;
    }
    for (int k = start; k <= m - (n - depth - 1); ++k) {
      mpz_class next = partial * weight[static_cast<std::size_t>(k)];
      if (sgn(next) == 0) continue;
      for (int i = 0; i < depth; ++i) {
        const long gap = k - sites[static_cast<std::size_t>(i)];
        next *= gap * gap;
      }
      sites[static_cast<std::size_t>(depth)] = k;
      visit(depth + 1, k + 1, next);
    }
  };
  visit(0, 0, mpz_class(1));

  mpz_class denom;
  mpz_pow_ui(denom.get_mpz_t(), scale.get_mpz_t(), static_cast<unsigned long>(n));
  mpq_class sum(total * factorial(n), denom);
  sum.canonicalize();
  return tau_prefactor(model) * sum;
}

ExactPolynomial hyper2f1_polynomial(const FiniteModel& model) {
  if (model.L() < 2 || model.M() < 1) throw DomainError("hyper2f1_polynomial needs L >= 2, M >= 1");
  // Term ratio of 2F1(a1, a2; 2; y): (a1+k)(a2+k) / ((2+k)(k+1)).
  const long a1 = 2 - model.L(), a2 = 1 - model.M();
  std::vector<mpq_class> coeffs;
  mpq_class term = 1;
  for (long k = 0; k <= model.max_site(); ++k) {
    coeffs.push_back(term);
    term *= mpq_class(mpz_class(a1 + k) * (a2 + k), mpz_class(2 + k) * (k + 1));
    term.canonicalize();
  }
  return ExactPolynomial(std::move(coeffs));
}

mpq_class tau_hankel(const FiniteModel& model, const mpq_class& x) {
  require_positive(x);
  const int n = model.N();
  const std::vector<mpq_class> nu = site_weights(model, x);
  const mpz_class scale = common_denominator(nu);
  const std::vector<mpz_class> weight = scaled_to_integers(nu, scale);

  // Moments of (x d/dx): sum_k (-k)^p nu_k.
  std::vector<mpz_class> moments(static_cast<std::size_t>(2 * n - 1));
  for (std::size_t k = 0; k < weight.size(); ++k) {
    mpz_class kp = 1;
    const long signed_site = -static_cast<long>(k);
    for (auto& moment : moments) {
      moment += kp * weight[k];
      kp *= signed_site;
    }
  }
  Matrix<mpz_class> hankel(static_cast<std::size_t>(n), std::vector<mpz_class>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) hankel[i][j] = moments[static_cast<std::size_t>(i + j)];
  const mpz_class det = bareiss_determinant(std::move(hankel), mpz_class(1));

  mpz_class denom;
  mpz_pow_ui(denom.get_mpz_t(), scale.get_mpz_t(), static_cast<unsigned long>(n));
  mpq_class value(det, denom);
  value.canonicalize();
  return hankel_scalar_factor(model) * value;
}

ExactPolynomial tau_polynomial(const FiniteModel& model) {
  const int n = model.N();
  const std::vector<mpq_class> coeffs = hyper2f1_polynomial(model).coefficients();
  const mpz_class scale = common_denominator(coeffs);
  const std::vector<mpz_class> weight = scaled_to_integers(coeffs, scale);

  std::vector<ExactPolynomial> moments;
  for (int p = 0; p <= 2 * n - 2; ++p) {
    std::vector<mpq_class> c(weight.size());
    for (std::size_t k = 0; k < weight.size(); ++k) {
      mpz_class kp;
      mpz_ui_pow_ui(kp.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(p));
      if (p == 0) kp = 1;
      if (p % 2 == 1) kp = -kp;
      c[k] = mpq_class(kp * weight[k]);
    }
    moments.emplace_back(std::move(c));
  }
  Matrix<ExactPolynomial> hankel(static_cast<std::size_t>(n), std::vector<ExactPolynomial>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) hankel[i][j] = moments[static_cast<std::size_t>(i + j)];
  ExactPolynomial det = bareiss_determinant(std::move(hankel), ExactPolynomial::constant(1));

  mpz_class denom;
  mpz_pow_ui(denom.get_mpz_t(), scale.get_mpz_t(), static_cast<unsigned long>(n));
  mpq_class factor = hankel_scalar_factor(model) / mpq_class(denom);
  return det * factor;
}

ExactPolynomial p_polynomial(const FiniteModel& model) {
  const long n = model.N();
  const std::size_t shift = static_cast<std::size_t>(n * (n - 1) / 2);
  ExactPolynomial p = tau_polynomial(model).shifted_down(shift);
  if (p.coefficient(0) != 1)
    throw ConsistencyError("P(0) = " + p.coefficient(0).get_str() + ", expected 1");
  if (p.degree() != model.p_degree())
    throw ConsistencyError("deg P = " + std::to_string(p.degree()) + ", expected " +
                           std::to_string(model.p_degree()));
  return p;
}

double partition_function(const FiniteModel& model, const WeightParams& w) {
  const long n = model.N(), m = model.M(), l = model.L();
  const long e_field = m * (l - 2 * n);
  if (w.alpha == 0 && e_field < 0)
    throw DomainError("alpha = 0 with negative field exponent M(L-2N)");
  if (w.alpha == 0 && e_field > 0) return 0.0;

  const ExactPolynomial p = p_polynomial(model);
  const mpq_class y = 1 / mpq_class(w.x);
  const long double log_z = log_rational(mpq_class(binomial(m, n))) +
                             static_cast<long double>((l - n) * (m - n)) * std::log((w.x - 1) / w.delta) +
                             (e_field == 0 ? 0.0L : e_field * std::log(w.alpha / std::sqrt(w.x))) +
                             static_cast<long double>(n * (l - n - 1)) * std::log(w.x) +
                             log_rational(p.evaluate(y));
  return static_cast<double>(std::exp(log_z));
}

mpq_class free_fermion_partition_function(const FiniteModel& model) {
  return mpq_class(binomial(model.M(), model.N())) * p_polynomial(model).evaluate(1);
}

}  // namespace fv::exact
