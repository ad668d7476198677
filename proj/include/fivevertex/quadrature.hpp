#pragma once

#include <functional>

#include "fivevertex/numeric.hpp"

namespace fv::quadrature {

// Integrand signature: f(u, u - a, b - u). The two gaps are computed without
// cancellation so integrands may carry square-root factors of either sign.
using EndpointIntegrand = std::function<Real(Real u, Real from_a, Real to_b)>;
using ComplexEndpointIntegrand = std::function<Complex(Real u, Real from_a, Real to_b)>;

// Integral over [a, b] of integrands with square-root behaviour at the end
// points. Uses u = (a+b)/2 + (b-a)/2 cos(theta) followed by tanh-sinh.
Real endpoint_integral(const EndpointIntegrand& f, Real a, Real b, Real tolerance = 1e-15L);
Complex endpoint_integral_complex(const ComplexEndpointIntegrand& f, Real a, Real b,
                                  Real tolerance = 1e-15L);

// Integral over [a, b] of g(u) / sqrt((u-a)(b-u)); the weight is absorbed by
// the substitution, so g is only required to be integrable in theta.
Real chebyshev_integral(const EndpointIntegrand& g, Real a, Real b, Real tolerance = 1e-15L);
Complex chebyshev_integral_complex(const ComplexEndpointIntegrand& g, Real a, Real b,
                                   Real tolerance = 1e-15L);

}  // namespace fv::quadrature
