#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fivevertex/asymptotics.hpp"
#include "fivevertex/equilibrium.hpp"
#include "fivevertex/exact.hpp"
#include "fivevertex/hankel_mp.hpp"

namespace fv::verify {

using asymptotics::Regime;
using asymptotics::ScaledGeometry;
using asymptotics::Scenario;

// How (lambda, mu, N) is rounded to a finite lattice.
//   Floor:  L = floor(lambda N),     M = floor(mu N)
//   LogGas: L = floor(lambda N) + 2, M = floor(mu N) + 1, i.e. the log-gas
//           occupies floor(lambda N) x floor(mu N) sites.
enum class Lattice { Floor, LogGas };
std::string to_string(Lattice lattice);
exact::FiniteModel lattice_model(const ScaledGeometry& geom, int n, Lattice lattice);

// Exact rational equal to a long double.
mpq_class exact_rational(Real v);

// Brute-force count of plane partitions in an a x b x c box, row by row.
mpz_class count_plane_partitions(int a, int b, int c);

// ---------------------------------------------------------------------------
// Two representations of tau.

struct EquivalenceGrid {
  int min_n = 1, max_n = 3;
  int l_min = 3, l_max = 8;
  int m_min = 2, m_max = 8;
  std::vector<mpq_class> xs{mpq_class(1, 2), mpq_class(1), mpq_class(2)};
};

struct EquivalenceCase {
  int n, m, l;
  mpq_class x;
  mpq_class hankel;
  mpq_class loggas;
};

struct EquivalenceReport {
  std::size_t checked = 0;
  std::size_t skipped_budget = 0;
  std::optional<EquivalenceCase> first_counterexample;
  bool passed() const { return !first_counterexample; }
};

EquivalenceReport equivalence_sweep(const EquivalenceGrid& grid,
                                    std::uint64_t budget = exact::kDefaultWorkBudget);

// ---------------------------------------------------------------------------
// Finite size.

struct ConvergenceRecord {
  int N = 0;
  Real x = 0;
  ScaledGeometry geometry{2, 2};
  Lattice lattice = Lattice::Floor;
  int M = 0, L = 0;
  Real finite_value = 0;       // (1/N^2) log P
  Real asymptotic_value = 0;   // f2(x)
  Real error = 0;
  unsigned bits = 0;
  bool precision_warning = false;
};

std::vector<ConvergenceRecord> convergence_study(const ScaledGeometry& geom, Real x,
                                                 const std::vector<int>& ns,
                                                 Lattice lattice = Lattice::Floor,
                                                 const exact::HighPrecisionOptions& options = {});

// Errors strictly decrease and the last one is within cap.
bool converges(const std::vector<ConvergenceRecord>& records, Real cap);

// (1/N^2) log of the x -> 0 leading coefficient of P against its N -> infinity
// limit, lim [f2(x) + (min(lambda, mu) - 1) log x].
struct SmallXRecord {
  int N = 0;
  int M = 0, L = 0;
  Real finite_value = 0;
  Real limit = 0;
  Real error = 0;
};

mpq_class leading_coefficient(const exact::FiniteModel& model);
std::vector<SmallXRecord> small_x_study(const ScaledGeometry& geom, const std::vector<int>& ns,
                                        Lattice lattice = Lattice::Floor);

// ---------------------------------------------------------------------------
// Phase transitions.

enum class CriticalPoint { Xc, XcTilde, X1, X2 };
std::string to_string(CriticalPoint which);
std::optional<Real> critical_point(const ScaledGeometry& geom, CriticalPoint which);

// Finite differences of Phi on both sides of a critical point. The variable is
// log x on the square domain and the end-point parameter t otherwise. Each
// one-sided limit of the k-th derivative extrapolates centred differences at
// v* +- 2h and v* +- 4h linearly to v*.
struct TransitionProbe {
  CriticalPoint which = CriticalPoint::Xc;
  Real x_star = 0;
  Real variable_star = 0;
  Real stencil_h = 0;
  std::array<Real, 4> left{};
  std::array<Real, 4> right{};
  // Roundoff bound on each jump, from 64 ulps of max |Phi| on the stencil.
  std::array<Real, 4> noise{};

  Real third_derivative_left() const { return left[3]; }
  Real third_derivative_right() const { return right[3]; }
  Real jump(int order = 3) const { return right[order] - left[order]; }
};

std::vector<TransitionProbe> transition_order(const ScaledGeometry& geom, CriticalPoint which,
                                              const std::vector<Real>& hs = {1e-2L, 1e-3L, 1e-4L});

struct TransitionVerdict {
  bool lower_orders_vanish = false;
  // max |J3(h) - J3(h')| / |J3(h_min)| over the refinement
  Real third_relative_variation = 0;
  Real third_jump = 0;
  bool third_jump_stable = false;
  bool third_jump_vanishes = false;
};

// Jumps "vanish" when each refinement shrinks them at least by `contraction`
// or they sit below the probe's roundoff bound. A stable third jump varies by
// at most 10% between refinements and stays above the bound.
TransitionVerdict assess(const std::vector<TransitionProbe>& probes, Real contraction = 0.5L);

// ---------------------------------------------------------------------------
// Scans in x.

struct ScanRow {
  Real x = 0;
  Scenario scenario = Scenario::VBV;
  Regime regime = Regime::I;
  bool on_boundary = false;
  Real a = 0, b = 0;
  Real first_moment = 0;
  Real phi = 0;
  Real f2 = 0;
  Real normalization_residual = 0;
  Real endpoint_residual = 0;
};

struct ScanBoundary {
  CriticalPoint which;
  Real x = 0;
  Real jump_a = 0, jump_b = 0, jump_moment = 0;
};

struct ScanResult {
  ScaledGeometry geometry{2, 2};
  std::vector<ScanRow> rows;
  std::vector<ScanBoundary> boundaries;  // critical values inside the grid
  int regime_count = 0;
  // Every change of regime (scenario) between neighbouring rows brackets a
  // regime (scenario) boundary and every boundary inside the grid is seen.
  bool boundaries_bracketed = false;
  Real max_jump = 0;
};

// Rows on a critical value are classified by `side` and flagged.
ScanResult scenario_scan(const ScaledGeometry& geom, const std::vector<Real>& xs,
                         asymptotics::BoundarySide side = asymptotics::BoundarySide::Upper);
std::vector<Real> log_grid(Real start, Real stop, int count);

// ---------------------------------------------------------------------------
// Named suites.

struct CaseResult {
  std::string key;
  bool passed = false;
  std::map<std::string, double> residuals;
  std::string message;
};

struct SuiteReport {
  std::string name;
  std::vector<CaseResult> cases;  // sorted by key
  bool passed() const;
};

struct SuiteOptions {
  int max_n = 4;
  std::uint64_t budget = exact::kDefaultWorkBudget;
  unsigned precision_bits = 256;
};

struct GridPoint {
  Real lambda, mu, x;
};
// Configurations covering every scenario, square and rectangular.
const std::vector<GridPoint>& equilibrium_grid();

const std::vector<std::string>& suite_names();
// Throws DomainError for an unknown name.
SuiteReport run_suite(const std::string& name, const SuiteOptions& options = {});

}  // namespace fv::verify
