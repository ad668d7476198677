#pragma once

#include <array>
#include <functional>
#include <optional>

#include "fivevertex/asymptotics.hpp"
#include "fivevertex/numeric.hpp"

namespace fv::equilibrium {

using asymptotics::BoundarySide;
using asymptotics::Regime;
using asymptotics::ScaledGeometry;
using asymptotics::Scenario;

// One-band support [a, b] inside [0, gamma], with the gaps to either side
// void or saturated according to the scenario.
struct BandSupport {
  Real a = 0;
  Real b = 0;
  Scenario scenario = Scenario::VBV;
  Regime regime = Regime::II;
  ScaledGeometry geometry{2, 2};
  Real x = 1;
  // The two walls entering the potential, near <= far. On the square domain
  // both equal lambda.
  Real near_wall = 2;
  Real far_wall = 2;
  // a and b coincide to working precision (x -> 0 on the rectangle, or in
  // the square VBS regime).
  bool collapsed = false;
  // End-point parameter and the sign nu, rectangular regime II only.
  std::optional<Real> t;
  std::optional<int> nu;

  Real gamma() const { return near_wall; }
  bool left_saturated() const { return asymptotics::left_saturated(scenario); }
  bool right_saturated() const { return asymptotics::right_saturated(scenario); }
};

// Appendix-C style quantities A, B, C of the rectangular VBV/VBS solution.
struct ParametricState {
  Real t = 0;
  Real offset = 0;  // t - t0
  Real w_plus = 0, w_minus = 0;
  Real A_plus = 0, A_minus = 0;
  Real B_plus = 0, B_minus = 0;
  Real C_plus = 0, C_minus = 0;
  Real N_plus = 0, N_minus = 1;
  int nu = 1;

  // Residuals of the defining relations, in the order
  // A+A- - B+B-, A+A- - C+C-, (A+ + A-) - (lambda - B+ - B-),
  // (A+ + A-) - (mu - C+ - C-), A-C+/(A+B-) / x(t) - 1,
  // 2A+ + B+ + C+ - N+, 2A- + B- + C- - N-, A+ - (N+ - w+)/2, A- - (N- - w-)/2.
  std::array<Real, 9> residuals(const ScaledGeometry& geom) const;
};

struct MeasureClosure {
  BandSupport support;
  std::function<Real(Real)> density;
  std::function<Complex(Complex)> resolvent;
  Real first_moment = 0;
};

// Distance from the support inside which the resolvent refuses to evaluate.
inline constexpr Real kCutGuard = 1e-12L;

BandSupport endpoints(const ScaledGeometry& geom, Real x, BoundarySide side = BoundarySide::Upper);

// nu defaults to the sign of B+ - B-; an explicit nu must agree with it.
ParametricState parametric_state(const ScaledGeometry& geom, Real t, std::optional<int> nu = std::nullopt);
ParametricState parametric_state_from_offset(const ScaledGeometry& geom, Real offset,
                                             std::optional<int> nu = std::nullopt);

// Equilibrium density on [0, gamma].
Real density(const BandSupport& s, Real z);
// Band density with the gaps z - a and b - z supplied by the caller.
Real band_density(const BandSupport& s, Real from_a, Real to_b);

// Closed-form resolvent W(z), z off the support.
Complex resolvent(const BandSupport& s, Complex z);
// Logarithmic cuts of the saturated gaps: log(z/(z-a)) and log((z-b)/(z-gamma)).
Complex gap_logs(const BandSupport& s, Complex z);
// H = W - gap_logs, analytic off [a, b].
Complex auxiliary_resolvent(const BandSupport& s, Complex z);
// True if z lies within kCutGuard of the band or a saturated gap.
bool on_support(const BandSupport& s, Complex z);

// The right-hand side U(u) of H(u + i0) + H(u - i0) = U(u) on the band.
Real auxiliary_potential(const BandSupport& s, Real u, Real from_a, Real to_b);

// W from the one-cut singular-integral solution, evaluated by quadrature.
Complex resolvent_quadrature(const BandSupport& s, Complex z, Real tolerance = 1e-15L);

// Closed forms of the standard one-cut integrals.
namespace integrals {
// int_a^b du / ((z-u) sqrt((u-a)(b-u)))
Complex basic(Real a, Real b, Complex z);
// int_a^b log((u-c)/(u-d)) du / ((z-u) sqrt((u-a)(b-u))), with c, d <= a or c, d >= b.
Complex log_ratio(Real a, Real b, Real c, Real d, Complex z);
// int_a^b log((u-c)/(d-u)) du / ((z-u) sqrt((u-a)(b-u))), with c <= a, b <= d.
Complex log_mixed(Real a, Real b, Real c, Real d, Complex z);
// f(z) = log(sqrt(alpha (z-a)) + sqrt(beta (z-b)))
Complex f(Real alpha, Real beta, Real a, Real b, Complex z);
// f(x + i0) - f(x - i0) = 2i arctan sqrt(beta (b-x) / (alpha (x-a))), a < x < b.
Complex f_jump(Real alpha, Real beta, Real a, Real b, Real x);
}  // namespace integrals

// First moment from the scenario's closed form in x.
Real first_moment(const BandSupport& s);
// First moment from the end-points, read off the z^-2 term of W.
Real first_moment_from_endpoints(const BandSupport& s);
// Integral of z rho(z) over [0, gamma] by quadrature.
Real first_moment_quadrature(const BandSupport& s, Real tolerance = 1e-15L);
// Integral of rho over [0, gamma] by quadrature.
Real normalization_quadrature(const BandSupport& s, Real tolerance = 1e-15L);

// The scenario's two end-point equations, left minus right side.
std::array<Real, 2> endpoint_residuals(const BandSupport& s);

// V(z) and V'(z). The square domain uses lambda for both walls.
Real potential(const ScaledGeometry& geom, Real x, Real z, bool allow_walls = false);
Real potential_derivative(const ScaledGeometry& geom, Real x, Real z);

MeasureClosure measure(const ScaledGeometry& geom, Real x, BoundarySide side = BoundarySide::Upper);

}  // namespace fv::equilibrium
