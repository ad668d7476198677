#include <cmath>

#include "doctest.h"
#include "fivevertex/errors.hpp"
#include "fivevertex/exact.hpp"
#include "fivevertex/hankel_mp.hpp"
#include "oracles.hpp"

using namespace fv;
using namespace fv::exact;

namespace {

mpq_class ratio(const mpz_class& a, const mpz_class& b) {
  mpq_class q(a, b);
  q.canonicalize();
  return q;
}

const mpq_class kSweepX[] = {mpq_class(1, 3), mpq_class(1, 2), 1, 2, 3};

template <class F>
void for_each_sweep_model(F&& f) {
  for (int n = 1; n <= 4; ++n)
    for (int l = 3; l <= 9; ++l)
      for (int m = 2; m <= 9; ++m)
        if (n <= m && n <= l - 1) f(FiniteModel(n, m, l));
}

}  // namespace

TEST_CASE("binomial conventions") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(7, 0) == 1);
  CHECK(binomial(4, 6) == 0);
  CHECK(binomial(4, -1) == 0);
}

TEST_CASE("macmahon matches enumeration for boxes up to 3") {
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b)
      for (int c = 0; c <= 3; ++c) {
        CAPTURE(a);
        CAPTURE(b);
        CAPTURE(c);
        CHECK(macmahon_pl(a, b, c) == oracle::count_plane_partitions(a, b, c));
        CHECK(macmahon_pl(a, b, c) == macmahon_pl(c, a, b));
        CHECK(macmahon_pl(a, b, c) == macmahon_pl(b, a, c));
      }
  CHECK(macmahon_pl(1, 1, 1) == 2);
  CHECK(macmahon_pl(2, 2, 2) == 20);
  CHECK(macmahon_pl(4, 3, 0) == 1);
}

TEST_CASE("model validation") {
  CHECK_THROWS_AS(FiniteModel(0, 3, 3), DomainError);
  CHECK_THROWS_WITH_AS(FiniteModel(3, 2, 5), "N exceeds M", DomainError);
  CHECK_THROWS_AS(FiniteModel(3, 4, 3), DomainError);
  CHECK_THROWS_AS(WeightParams(2.0, -1.0, 1.0), DomainError);
  CHECK_THROWS_AS(WeightParams(0.5, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(WeightParams(2.0, 1.0, -1.0), DomainError);
}

TEST_CASE("site weights") {
  CHECK(loggas_weight(FiniteModel(1, 5, 6), 0, mpq_class(7, 3)) == 1);
  CHECK(loggas_weight(FiniteModel(1, 3, 4), 1, 2) == 1);
  CHECK(loggas_weight(FiniteModel(1, 2, 3), 1, 1) == mpq_class(1, 2));
  CHECK_THROWS_AS(loggas_weight(FiniteModel(1, 2, 3), 2, 1), DomainError);
  CHECK_THROWS_AS(loggas_weight(FiniteModel(1, 2, 3), -1, 1), DomainError);
}

TEST_CASE("hypergeometric coefficients") {
  CHECK(hyper2f1_polynomial(FiniteModel(1, 2, 3)) == ExactPolynomial({1, mpq_class(1, 2)}));
  CHECK(hyper2f1_polynomial(FiniteModel(1, 7, 2)) == ExactPolynomial::constant(1));
  const FiniteModel big(2, 6, 8);
  const ExactPolynomial f = hyper2f1_polynomial(big);
  for (int k = 0; k <= big.max_site(); ++k)
    CHECK(f.coefficient(static_cast<std::size_t>(k)) == loggas_weight(big, k, 1));
}

TEST_CASE("tau small cases") {
  const FiniteModel tiny(1, 2, 3);
  CHECK(tau_loggas(tiny, 1) == mpq_class(3, 2));
  CHECK(tau_hankel(tiny, 1) == mpq_class(3, 2));
  CHECK(tau_polynomial(tiny) == ExactPolynomial({1, mpq_class(1, 2)}));
  CHECK(tau_prefactor(FiniteModel(1, 6, 9)) == 1);
  const FiniteModel sq(2, 4, 4);
  CHECK(tau_hankel(sq, 1) == tau_loggas(sq, 1));
  CHECK(tau_hankel(sq, 1) == oracle::tau_full_sum(2, 4, 4, 1));
}

TEST_CASE("log-gas budget") {
  const FiniteModel model(4, 9, 9);
  CHECK(loggas_work_estimate(model) == 70 * 24);
  try {
    tau_loggas(model, 1, 100);
    FAIL("expected budget error");
  } catch (const BudgetExceeded& e) {
    CHECK(e.estimated() == 70 * 24);
    CHECK(e.budget() == 100);
  }
}

TEST_CASE("both tau routes match the unordered sum") {
  for (const auto& [n, m, l] : {std::tuple{1, 4, 5}, {2, 5, 4}, {3, 6, 7}, {2, 9, 9}, {4, 5, 8}}) {
    const FiniteModel model(n, m, l);
    for (const auto& x : kSweepX) {
      const mpq_class ref = oracle::tau_full_sum(n, m, l, x);
      CHECK(tau_loggas(model, x) == ref);
      CHECK(tau_hankel(model, x) == ref);
    }
  }
}

TEST_CASE("prefactor matches direct product") {
  for_each_sweep_model([](const FiniteModel& model) {
    CHECK(tau_prefactor(model) == oracle::prefactor(model.N(), model.M(), model.L()));
  });
}

TEST_CASE("representation equivalence over the sweep") {
  for_each_sweep_model([](const FiniteModel& model) {
    for (const auto& x : kSweepX) {
      CAPTURE(model.N());
      CAPTURE(model.M());
      CAPTURE(model.L());
      REQUIRE(tau_hankel(model, x) == tau_loggas(model, x));
    }
  });
}

TEST_CASE("structure of P over the sweep") {
  for_each_sweep_model([](const FiniteModel& model) {
    const int n = model.N(), m = model.M(), l = model.L();
    CAPTURE(n);
    CAPTURE(m);
    CAPTURE(l);
    const ExactPolynomial p = p_polynomial(model);
    CHECK(p.coefficient(0) == 1);
    CHECK(p.degree() == n * std::min(m - n, l - n - 1));
    CHECK(p == p_polynomial(FiniteModel(n, l - 1, m + 1)));
    CHECK(p.evaluate(1) * mpq_class(oracle::choose(m, n)) ==
          oracle::count_plane_partitions(l - n, n, m - n));
    if (l <= m + 1) {
      CHECK(p.leading_coefficient() ==
            ratio(oracle::count_plane_partitions(n, m - l + 1, l - n), oracle::choose(m, n)));
    }
    if (l >= m + 1) {
      CHECK(p.leading_coefficient() ==
            ratio(oracle::count_plane_partitions(n, l - m - 1, m - n + 1), oracle::choose(l - 1, n)));
    }
    const mpq_class x = 2;
    mpq_class shift = 1;
    for (int i = 0; i < n * (n - 1) / 2; ++i) shift *= x;
    CHECK(p.evaluate(1 / x) == shift * tau_hankel(model, x));
  });
}

TEST_CASE("P examples") {
  CHECK(p_polynomial(FiniteModel(1, 2, 3)) == ExactPolynomial({1, mpq_class(1, 2)}));
  CHECK(p_polynomial(FiniteModel(2, 4, 5)).evaluate(1) == ratio(macmahon_pl(3, 2, 2), 6));
  CHECK(p_polynomial(FiniteModel(2, 5, 5)).leading_coefficient() == 1);
}

TEST_CASE("partition function") {
  const FiniteModel model(2, 5, 6);
  const ExactPolynomial p = p_polynomial(model);
  for (double x : {0.4, 2.5}) {
    const WeightParams w(x, x - 1, std::sqrt(x));
    const double expect = 10.0 * std::pow(x, 2 * 3) * p.evaluate(mpq_class(1 / x)).get_d();
    CHECK(partition_function(model, w) == doctest::Approx(expect).epsilon(1e-12));
  }
  const WeightParams generic(3.0, 0.7, 1.3);
  const double e = std::pow(2.0 / 0.7, 4 * 3) * std::pow(1.3 / std::sqrt(3.0), 5 * 2) * std::pow(3.0, 6);
  CHECK(partition_function(model, generic) ==
        doctest::Approx(10.0 * e * p.evaluate(mpq_class(1, 3)).get_d()).epsilon(1e-12));
  CHECK(free_fermion_partition_function(FiniteModel(1, 2, 3)) == 3);
  CHECK(free_fermion_partition_function(FiniteModel(3, 5, 7)) == macmahon_pl(4, 3, 2));
}

TEST_CASE("zero field") {
  CHECK(partition_function(FiniteModel(1, 2, 4), WeightParams(2.0, 1.0, 0.0)) == 0.0);
  CHECK_THROWS_AS(partition_function(FiniteModel(2, 2, 3), WeightParams(2.0, 1.0, 0.0)), DomainError);
}

TEST_CASE("high-precision Hankel route agrees with exact arithmetic") {
  for (const auto& [n, m, l] : {std::tuple{4, 9, 10}, {8, 16, 18}, {16, 48, 34}, {12, 12, 13}}) {
    const FiniteModel model(n, m, l);
    for (const mpq_class& x : {mpq_class(1, 2), mpq_class(1), mpq_class(2)}) {
      const HighPrecisionLogP hp = log_p_high_precision(model, x);
      CAPTURE(n);
      CHECK_FALSE(hp.precision_warning);
      CHECK(hp.disagreement <= 1e-25);
      CHECK(hp.bits >= 512);
      CHECK(std::fabs(static_cast<double>(hp.log_p - log_p_exact(model, x))) <= 1e-15);
    }
  }
}

TEST_CASE("log P of a trivial polynomial") {
  // N = 1, L = 2: P = 1.
  CHECK(log_p_exact(FiniteModel(1, 5, 2), 3) == 0);
  CHECK(std::fabs(static_cast<double>(log_p_high_precision(FiniteModel(1, 5, 2), 3).log_p)) < 1e-30);
}
