#pragma once

#include <optional>
#include <string>

#include "fivevertex/exact.hpp"
#include "fivevertex/numeric.hpp"

namespace fv::asymptotics {

// |lambda - mu| at or below this is treated as the square-domain limit.
inline constexpr Real kSymmetricTolerance = 1e-9L;

// Aspect ratios lambda = L/N, mu = M/N of the scaled domain. The log-gas
// potential is symmetric under lambda <-> mu, so formulas use the canonical
// ordering lo() <= hi(); lambda() and mu() keep the caller's orientation.
class ScaledGeometry {
 public:
  ScaledGeometry(Real lambda, Real mu, Real symmetric_tolerance = kSymmetricTolerance);

  Real lambda() const { return lambda_; }
  Real mu() const { return mu_; }
  Real lo() const { return lambda_ <= mu_ ? lambda_ : mu_; }
  Real hi() const { return lambda_ <= mu_ ? mu_ : lambda_; }
  // Position of the right hard wall, min(lambda, mu).
  Real gamma() const { return lo(); }
  bool symmetric() const { return hi() - lo() <= symmetric_tolerance_; }
  bool swapped() const { return lambda_ > mu_; }
  // Throws DomainError unless lambda, mu > 1.
  void require_interior() const;

 private:
  Real lambda_;
  Real mu_;
  Real symmetric_tolerance_;
};

enum class Scenario { SBV, SBS, VBV, VBS };
enum class Regime { I, II, III };

std::string to_string(Scenario s);
std::string to_string(Regime r);
inline bool left_saturated(Scenario s) { return s == Scenario::SBV || s == Scenario::SBS; }
inline bool right_saturated(Scenario s) { return s == Scenario::SBS || s == Scenario::VBS; }

struct CriticalValues {
  Real x_c = 0;
  std::optional<Real> x_c_tilde;  // square domain only
  std::optional<Real> x1;         // rectangular only: b reaches the wall in SBV/SBS
  std::optional<Real> x2;         // rectangular only: b reaches the wall in VBV/VBS
  std::optional<Real> t_c;
  std::optional<Real> t0;
  std::optional<Real> t2;
  bool sbs_region = false;
};

// Which side a critical point belongs to when x sits on it.
enum class BoundarySide { Upper, Lower };

struct ScenarioReport {
  Scenario scenario;
  Regime regime;
  ScaledGeometry geometry;
  Real x;
  CriticalValues critical;
  bool on_boundary = false;
  std::optional<Real> boundary;  // the critical value x collided with
};

// Free-energy density of boxed plane partitions, lim (1/N^2) log PL(N, aN, bN).
Real psi(Real a, Real b);
// Psi(lambda-1, lambda-1) in closed form.
Real psi_equal_args(Real lambda);

CriticalValues critical_values(const ScaledGeometry& geom);

// Tolerance used to decide that x sits on a critical value.
inline Real boundary_tolerance(Real x) { return 1e-12L * (x > 1 ? x : 1); }

ScenarioReport classify(const ScaledGeometry& geom, Real x, BoundarySide side = BoundarySide::Upper);

// Rectangular domain: x as a function of the end-point parameter t > t0 = hi-lo.
Real x_of_t(const ScaledGeometry& geom, Real t);
// x_of_t at t = t0 + offset, accurate for offset << t0.
Real x_of_t_offset(const ScaledGeometry& geom, Real offset);
// Inverse of x_of_t on (t0, inf).
Real t_of_x(const ScaledGeometry& geom, Real x);
// t - t0 for the root of x_of_t(t) = x; keeps full relative precision as x -> 0.
Real t_offset_of_x(const ScaledGeometry& geom, Real x);

// Log-gas free-energy density -lim (1/N^2) log tau.
Real phi(const ScaledGeometry& geom, Real x);
// Rectangular regime I (x > x_c), direct in x.
Real phi_regime_one(const ScaledGeometry& geom, Real x);
// Rectangular regime I written through the end-point parametrisation.
Real phi_regime_one_parametric(const ScaledGeometry& geom, Real t);
// Rectangular regime II (x < x_c) at t = t0 + offset.
Real phi_regime_two(const ScaledGeometry& geom, Real offset);
Real phi_regime_two_parametric(const ScaledGeometry& geom, Real t);

// f2(x) = log sqrt(x) - Phi(x): leading behaviour of (1/N^2) log P.
Real f2(const ScaledGeometry& geom, Real x);

// Free energy of the five-vertex model per site.
Real free_energy(const ScaledGeometry& geom, const exact::WeightParams& w);

}  // namespace fv::asymptotics
