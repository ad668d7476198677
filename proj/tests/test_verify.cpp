#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "fivevertex/errors.hpp"
#include "fivevertex/verify.hpp"
#include "oracles.hpp"

using namespace fv;
using namespace fv::verify;

namespace {

double d(Real v) { return static_cast<double>(v); }

std::vector<Scenario> scenario_sequence(const ScanResult& r) {
  std::vector<Scenario> seq;
  for (const auto& row : r.rows)
    if (seq.empty() || seq.back() != row.scenario) seq.push_back(row.scenario);
  return seq;
}

// Third derivatives in s = log x of the square-domain closed forms on either
// side of x_c.
Real third_regime_one(Real l, Real x) { return (l - 1) * (l - 1) * x * (x + 1) / std::pow(x - 1, 3); }
Real third_regime_two(Real l, Real x) {
  const Real s = std::sqrt(x) / (1 + std::sqrt(x));
  return -(2 * l - 1) / 8 * s * (1 - s) * (1 - 2 * s);
}

}  // namespace

TEST_CASE("plane-partition enumerators agree") {
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; b <= 4; ++b)
      for (int c = 0; c <= 3; ++c) CHECK(count_plane_partitions(a, b, c) == oracle::count_plane_partitions(a, b, c));
  CHECK(count_plane_partitions(2, 2, 2) == 20);
  CHECK_THROWS_AS(count_plane_partitions(-1, 2, 2), DomainError);
}

TEST_CASE("lattice conventions") {
  const ScaledGeometry g(2, 3);
  const auto floor = lattice_model(g, 8, Lattice::Floor);
  CHECK(floor.L() == 16);
  CHECK(floor.M() == 24);
  const auto gas = lattice_model(g, 8, Lattice::LogGas);
  CHECK(gas.L() == 18);
  CHECK(gas.M() == 25);
  CHECK(lattice_model(ScaledGeometry(1.2L, 3), 10, Lattice::Floor).L() == 12);
  CHECK(to_string(Lattice::LogGas) == "log-gas");
}

TEST_CASE("exact rationals from long doubles") {
  for (Real v : {0.5L, 1.0L / 3, 1e-300L, 123456.789L}) CHECK(to_real(exact_rational(v)) == v);
  CHECK(exact_rational(0.5L) == mpq_class(1, 2));
}

TEST_CASE("equivalence sweep") {
  const EquivalenceReport r = equivalence_sweep({});
  CHECK(r.passed());
  CHECK(r.checked > 0);
  CHECK(r.skipped_budget == 0);

  EquivalenceGrid empty;
  empty.max_n = 0;
  const EquivalenceReport vacuous = equivalence_sweep(empty);
  CHECK(vacuous.passed());
  CHECK(vacuous.checked == 0);

  EquivalenceGrid one;
  one.max_n = 1;
  one.l_min = one.l_max = 3;
  one.m_min = one.m_max = 2;
  CHECK(equivalence_sweep(one).checked == 3);
  CHECK(oracle::tau_full_sum(1, 2, 3, mpq_class(1)) == mpq_class(3, 2));

  const EquivalenceReport starved = equivalence_sweep(one, 0);
  CHECK(starved.checked == 0);
  CHECK(starved.skipped_budget == 3);
}

TEST_CASE("convergence study") {
  const auto first = convergence_study(ScaledGeometry(3, 2), 0.7L, {1});
  REQUIRE(first.size() == 1);
  CHECK(first[0].L == 3);
  CHECK(first[0].M == 2);
  CHECK(std::fabs(d(first[0].finite_value - std::log1p(1 / (2 * 0.7L)))) < 1e-17);

  for (Lattice lattice : {Lattice::Floor, Lattice::LogGas}) {
    const auto rs = convergence_study(ScaledGeometry(2, 2), 1, {8, 16, 32}, lattice);
    REQUIRE(rs.size() == 3);
    for (const auto& r : rs) {
      CHECK(r.lattice == lattice);
      CHECK(r.bits >= 256);
      CHECK_FALSE(r.precision_warning);
      CHECK(std::fabs(d(r.asymptotic_value - asymptotics::psi(1, 1))) < 1e-15);
      CHECK(d(r.error) == doctest::Approx(std::fabs(d(r.finite_value - r.asymptotic_value))));
    }
    CHECK(rs[0].error > rs[1].error);
    CHECK(rs[1].error > rs[2].error);
  }
  const auto gas = convergence_study(ScaledGeometry(2, 3), 0.5L, {8, 16, 32}, Lattice::LogGas);
  CHECK(converges(gas, 0.05L));
  CHECK_FALSE(converges(gas, 1e-3L));
  CHECK_FALSE(converges({}, 1));
  CHECK_THROWS_AS(convergence_study(ScaledGeometry(2, 2), 0, {8}), DomainError);
}

TEST_CASE("small-x leading coefficients") {
  for (auto [n, m, l] : std::vector<std::tuple<int, int, int>>{{2, 5, 4}, {3, 6, 8}, {2, 4, 5}, {3, 5, 5}}) {
    const exact::FiniteModel model(n, m, l);
    CHECK(leading_coefficient(model) == exact::p_polynomial(model).leading_coefficient());
  }
  for (auto [l, m] : std::vector<std::pair<Real, Real>>{{2, 3}, {3, 2}, {2, 2}}) {
    const auto rs = small_x_study(ScaledGeometry(l, m), {8, 16, 32, 64}, Lattice::Floor);
    for (std::size_t i = 1; i < rs.size(); ++i) {
      // L = M: a single configuration maximises the count, so the coefficient is 1.
      if (l == m)
        CHECK(rs[i].error == 0);
      else
        CHECK(rs[i].error < rs[i - 1].error);
    }
    CHECK(rs.back().error < 0.05);
    const Real lo = std::min(l, m);
    // Independently: the same limit read off f2 itself at tiny x.
    const Real tiny = 1e-10L;
    CHECK(std::fabs(d(asymptotics::f2(ScaledGeometry(l, m), tiny) + (lo - 1) * std::log(tiny) - rs.back().limit)) < 1e-5);
  }
}

TEST_CASE("square-domain third-order transition") {
  const ScaledGeometry g(2, 2);
  const Real expected = third_regime_one(2, 9) - third_regime_two(2, 9);
  CHECK(std::fabs(d(expected - Real(9) / 64)) < 1e-15);
  const auto probes = transition_order(g, CriticalPoint::Xc);
  REQUIRE(probes.size() == 3);
  for (const auto& p : probes) {
    CHECK(d(p.x_star) == 9.0);
    CHECK(p.jump() == p.third_derivative_right() - p.third_derivative_left());
  }
  CHECK(std::fabs(d(probes[1].third_derivative_right() - third_regime_one(2, 9))) < 1e-5);
  CHECK(std::fabs(d(probes[1].third_derivative_left() - third_regime_two(2, 9))) < 1e-5);
  CHECK(std::fabs(d(probes[1].jump() - expected)) < 1e-5);

  const auto v = assess(probes);
  CHECK(v.lower_orders_vanish);
  CHECK(v.third_jump_stable);
  CHECK_FALSE(v.third_jump_vanishes);
  CHECK(v.third_relative_variation < 0.1);

  // x -> 1/x maps the square domain onto itself.
  const auto tilde = assess(transition_order(g, CriticalPoint::XcTilde));
  CHECK(std::fabs(d(tilde.third_jump - expected)) < 1e-5);
}

TEST_CASE("rectangular transitions") {
  const auto xc = assess(transition_order(ScaledGeometry(2, 3), CriticalPoint::Xc));
  CHECK(xc.lower_orders_vanish);
  CHECK(xc.third_jump_stable);
  const auto x2 = assess(transition_order(ScaledGeometry(2, 3), CriticalPoint::X2));
  CHECK(x2.lower_orders_vanish);
  CHECK(x2.third_jump_vanishes);
  const auto x1 = assess(transition_order(ScaledGeometry(1.2L, 3), CriticalPoint::X1));
  CHECK(x1.lower_orders_vanish);
  CHECK(x1.third_jump_vanishes);

  CHECK_THROWS_AS(transition_order(ScaledGeometry(2, 3), CriticalPoint::X1), DomainError);
  CHECK_THROWS_AS(transition_order(ScaledGeometry(2, 3), CriticalPoint::XcTilde), DomainError);
  CHECK_THROWS_AS(transition_order(ScaledGeometry(2, 2), CriticalPoint::Xc, {0}), DomainError);
  CHECK_FALSE(assess({}).third_jump_stable);
}

TEST_CASE("scenario scans") {
  {
    const ScanResult r = scenario_scan(ScaledGeometry(1.2L, 3), log_grid(0.1L, 20, 200));
    CHECK(scenario_sequence(r) == std::vector<Scenario>{Scenario::VBS, Scenario::SBS, Scenario::SBV});
    REQUIRE(r.boundaries.size() == 2);
    CHECK(r.boundaries[0].which == CriticalPoint::Xc);
    CHECK(d(r.boundaries[0].x) == doctest::Approx(6.40).epsilon(1e-3));
    CHECK(d(r.boundaries[1].x) == doctest::Approx(10));
    CHECK(r.boundaries_bracketed);
    CHECK(r.regime_count == 2);
  }
  {
    const ScanResult r = scenario_scan(ScaledGeometry(2, 3), log_grid(0.1L, 100, 200));
    CHECK(scenario_sequence(r) == std::vector<Scenario>{Scenario::VBS, Scenario::VBV, Scenario::SBV});
    CHECK(r.boundaries_bracketed);
    CHECK(r.boundaries.front().which == CriticalPoint::X2);
  }
  {
    const ScanResult r = scenario_scan(ScaledGeometry(2, 2), log_grid(0.01L, 100, 101));
    CHECK(scenario_sequence(r) == std::vector<Scenario>{Scenario::VBS, Scenario::VBV, Scenario::SBV});
    CHECK(r.regime_count == 3);
    REQUIRE(r.boundaries.size() == 2);
    CHECK(d(r.boundaries[0].x) == doctest::Approx(1.0 / 9));
    CHECK(d(r.boundaries[1].x) == doctest::Approx(9));
    CHECK(r.boundaries_bracketed);
    CHECK(r.max_jump < 1e-6);
    for (const auto& row : r.rows) {
      CHECK(std::fabs(d(row.normalization_residual)) < 1e-7);
      CHECK(d(row.f2) == doctest::Approx(d(std::log(row.x) / 2 - row.phi)));
    }
  }
  // A grid point exactly on x_c belongs to the upper side.
  const ScanResult on = scenario_scan(ScaledGeometry(2, 2), {8, 9, 10});
  CHECK(on.rows[1].on_boundary);
  CHECK(on.rows[1].scenario == Scenario::SBV);
  CHECK(on.boundaries_bracketed);
  CHECK(scenario_scan(ScaledGeometry(2, 2), {}).rows.empty());
}

TEST_CASE("log grid") {
  const auto g = log_grid(0.01L, 100, 5);
  REQUIRE(g.size() == 5);
  CHECK(d(g[2]) == doctest::Approx(1));
  CHECK(g.front() == 0.01L);
  CHECK(g.back() == 100);
  CHECK(log_grid(3, 3, 1) == std::vector<Real>{3});
  CHECK_THROWS_AS(log_grid(1, 0.5L, 3), DomainError);
  CHECK_THROWS_AS(log_grid(1, 2, 0), DomainError);
  CHECK_THROWS_AS(log_grid(-1, 2, 3), DomainError);
}

TEST_CASE("named suites") {
  const auto& names = suite_names();
  CHECK(names.size() == 10);
  CHECK(std::find(names.begin(), names.end(), "equivalence") != names.end());
  try {
    run_suite("nope");
    FAIL("unknown suite accepted");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("macmahon") != std::string::npos);
  }
  for (const std::string name : {"macmahon", "equilibrium", "special-values", "parametric"}) {
    CAPTURE(name);
    const SuiteReport r = run_suite(name);
    CHECK(r.name == name);
    CHECK(r.passed());
    CHECK(std::is_sorted(r.cases.begin(), r.cases.end(),
                         [](const CaseResult& a, const CaseResult& b) { return a.key < b.key; }));
  }
  SuiteOptions small;
  small.max_n = 2;
  CHECK(run_suite("equivalence", small).cases.size() == 2);
  CHECK(equilibrium_grid().size() >= 12);
}
