#include "fivevertex/quadrature.hpp"

#include <cmath>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "fivevertex/errors.hpp"

namespace fv::quadrature {

namespace {

// Nodes closer than this to either end of [0, pi] are skipped. The gaps then
// stay above ~1e-600, far from underflow in long double.
constexpr Real kMinComplement = 1e-300L;

// Integrates h(u, u - a, b - u, sin(theta)/2 (b - a)) over theta in [0, pi].
template <class H>
Real integrate_theta(const H& h, Real a, Real b, Real tolerance) {
  if (!(b >= a)) throw DomainError("integration interval must satisfy a <= b");
  if (a == b) return 0;
  const Real width = b - a;
  // xc is the signed distance to the nearer end point.
  auto g = [&](Real theta, Real xc) -> Real {
    Real half_sin, half_cos;
    if (xc > 0) {
      half_cos = std::sin(xc / 2);
      half_sin = std::cos(xc / 2);
    } else {
      half_sin = std::sin(theta / 2);
      half_cos = std::cos(theta / 2);
    }
    const Real from_a = width * half_cos * half_cos;
    const Real to_b = width * half_sin * half_sin;
    const Real u = from_a <= to_b ? a + from_a : b - to_b;
    return h(u, from_a, to_b, width * half_sin * half_cos);
  };
  thread_local boost::math::quadrature::tanh_sinh<Real> integrator(15, kMinComplement);
  Real error = 0;
  const Real value = integrator.integrate(g, Real(0), kPi, tolerance, &error);
  if (!std::isfinite(value)) throw ConvergenceError("quadrature produced a non-finite value", 0);
  return value;
}

}  // namespace

Real endpoint_integral(const EndpointIntegrand& f, Real a, Real b, Real tolerance) {
  return integrate_theta([&](Real u, Real fa, Real tb, Real jac) { return f(u, fa, tb) * jac; }, a, b, tolerance);
}

Complex endpoint_integral_complex(const ComplexEndpointIntegrand& f, Real a, Real b, Real tolerance) {
  return {endpoint_integral([&](Real u, Real fa, Real tb) { return f(u, fa, tb).real(); }, a, b, tolerance),
          endpoint_integral([&](Real u, Real fa, Real tb) { return f(u, fa, tb).imag(); }, a, b, tolerance)};
}

Real chebyshev_integral(const EndpointIntegrand& g, Real a, Real b, Real tolerance) {
  return integrate_theta([&](Real u, Real fa, Real tb, Real) { return g(u, fa, tb); }, a, b, tolerance);
}

Complex chebyshev_integral_complex(const ComplexEndpointIntegrand& g, Real a, Real b, Real tolerance) {
  return {chebyshev_integral([&](Real u, Real fa, Real tb) { return g(u, fa, tb).real(); }, a, b, tolerance),
          chebyshev_integral([&](Real u, Real fa, Real tb) { return g(u, fa, tb).imag(); }, a, b, tolerance)};
}

}  // namespace fv::quadrature
