#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <vector>

#include "fivevertex/polynomial.hpp"

namespace fv::exact {

inline constexpr std::uint64_t kDefaultWorkBudget = 100'000'000;

// Five-vertex lattice with scalar-product boundary: N paths on L vertical and
// M horizontal lines. Admissible iff 1 <= N <= min(M, L-1).
class FiniteModel {
 public:
  FiniteModel(int n, int m, int l);

  int N() const { return n_; }
  int M() const { return m_; }
  int L() const { return l_; }
  // Largest log-gas site, min(L-2, M-1).
  int max_site() const { return std::min(l_ - 2, m_ - 1); }
  // deg P = N min(M-N, L-N-1).
  int p_degree() const { return n_ * std::min(m_ - n_, l_ - n_ - 1); }

  friend bool operator==(const FiniteModel&, const FiniteModel&) = default;

 private:
  int n_;
  int m_;
  int l_;
};

// Boltzmann-weight parameters. x lies in (0,1) when delta < 0 and in (1,inf)
// when delta > 0; alpha >= 0 is the vertical field.
struct WeightParams {
  WeightParams(double x, double delta, double alpha);
  double x;
  double delta;
  double alpha;
};

mpz_class binomial(long n, long k);
mpz_class factorial(long n);

// MacMahon's count of plane partitions in an a x b x c box.
mpz_class macmahon_pl(long a, long b, long c);

// C_{N,M,L}: the normalisation in front of both representations of tau.
mpq_class tau_prefactor(const FiniteModel& model);

// Site weight nu(k) = C(L-2,k) C(M-1,k) x^{-k} / (k+1).
mpq_class loggas_weight(const FiniteModel& model, int k, const mpq_class& x);

// Number of elementary products the ordered log-gas sum would take.
std::uint64_t loggas_work_estimate(const FiniteModel& model);

// tau via the discrete log-gas sum over strictly ordered site tuples.
mpq_class tau_loggas(const FiniteModel& model, const mpq_class& x,
                     std::uint64_t budget = kDefaultWorkBudget);

// Coefficients of 2F1(-L+2, -M+1; 2; y) in powers of y = 1/x.
ExactPolynomial hyper2f1_polynomial(const FiniteModel& model);

// tau via N! C det[(x d/dx)^{i+j-2} F(1/x)], fraction-free over the integers.
mpq_class tau_hankel(const FiniteModel& model, const mpq_class& x);

// tau as a polynomial in y = 1/x, built from the symbolic Hankel determinant.
ExactPolynomial tau_polynomial(const FiniteModel& model);

// P_{N,M,L}(y) = x^{N(N-1)/2} tau(y). Verifies P(0) = 1 and the degree.
ExactPolynomial p_polynomial(const FiniteModel& model);

// Z = C(M,N) E_{N,M,L}(x; delta, alpha) P(1/x).
double partition_function(const FiniteModel& model, const WeightParams& w);

// Z at the free-fermion point (x = e^delta, delta -> 0, alpha = 1): C(M,N) P(1).
mpq_class free_fermion_partition_function(const FiniteModel& model);

}  // namespace fv::exact
