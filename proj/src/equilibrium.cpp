#include "fivevertex/equilibrium.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "fivevertex/errors.hpp"
#include "fivevertex/quadrature.hpp"

namespace fv::equilibrium {

namespace {

constexpr Real kEps = std::numeric_limits<Real>::epsilon();
constexpr Real kStateTolerance = 1e-12L;

Real ell(Real u) { return u == 0 ? Real(0) : u * std::log(u); }

// (1/pi) arctan sqrt(p (b-z) / (q (z-a))) with both gaps supplied.
Real arc(Real p, Real q, Real from_a, Real to_b) {
  return std::atan2(std::sqrt(p * to_b), std::sqrt(q * from_a)) / kPi;
}

Complex csqrt(Complex z) { return std::sqrt(z); }

int right_sign(const BandSupport& s) { return s.right_saturated() ? -1 : 1; }

}  // namespace

std::array<Real, 9> ParametricState::residuals(const ScaledGeometry& geom) const {
  const Real l = geom.lo();
  const Real m = geom.hi();
  const Real xt = asymptotics::x_of_t_offset(geom, offset);
  return {A_plus * A_minus - B_plus * B_minus,
          A_plus * A_minus - C_plus * C_minus,
          (A_plus + A_minus) - (l - B_plus - B_minus),
          (A_plus + A_minus) - (m - C_plus - C_minus),
          A_minus * C_plus / (A_plus * B_minus) / xt - 1,
          2 * A_plus + B_plus + C_plus - N_plus,
          2 * A_minus + B_minus + C_minus - N_minus,
          A_plus - (N_plus - w_plus) / 2,
          A_minus - (N_minus - w_minus) / 2};
}

ParametricState parametric_state_from_offset(const ScaledGeometry& geom, Real offset, std::optional<int> nu) {
  geom.require_interior();
  if (geom.symmetric()) throw DomainError("end-point parametrisation needs lambda != mu");
  if (!(offset > 0)) throw DomainError("t must exceed mu - lambda");
  const Real l = geom.lo();
  const Real m = geom.hi();
  const Real t0 = m - l;
  const Real t = t0 + offset;
  const Real den = 2 * t * t * (l + m + t);
  const Real p1 = (2 * l - 2) * t0 + (2 * l - 1) * offset;  // (2l-1)t + l - m
  const Real p2 = (2 * m - 1) * t + t0;                     // (2m-1)t - l + m

  ParametricState s;
  s.t = t;
  s.offset = offset;
  s.N_plus = l + m - 1;
  s.N_minus = 1;
  s.w_minus = (s.N_plus * s.N_minus + t0 * t0 * (t + 1) / (t * t)) / (s.N_plus + s.N_minus * (t + 1));
  s.w_plus = (t + 1) * s.w_minus;
  s.A_plus = p1 * p2 / den;
  s.A_minus = (t + 1) * (t + t0) * offset / den;
  s.B_plus = (t + 1) * offset * p1 / den;
  s.B_minus = (t + t0) * p2 / den;
  s.C_plus = (t + 1) * (t + t0) * p2 / den;
  s.C_minus = offset * p1 / den;

  const int natural = s.B_plus >= s.B_minus ? 1 : -1;
  if (nu) {
    if (*nu != 1 && *nu != -1) throw DomainError("nu must be +1 or -1");
    const Real gap = std::fabs(s.B_plus - s.B_minus);
    if (*nu != natural && gap > kStateTolerance * (s.B_plus + s.B_minus))
      throw ConsistencyError("nu = " + std::to_string(*nu) + " contradicts the sign of B+ - B-");
    s.nu = *nu;
  } else {
    s.nu = natural;
  }

  for (Real q : {s.A_plus, s.A_minus, s.B_plus, s.B_minus, s.C_plus, s.C_minus})
    if (q < 0) throw ConsistencyError("parametric quantity turned negative");
  const auto r = s.residuals(geom);
  const Real scale = std::max<Real>(1, l + m);
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!(std::fabs(r[i]) <= kStateTolerance * scale))
      throw ConsistencyError("parametric relation " + std::to_string(i) + " violated: residual " +
                             std::to_string(static_cast<double>(r[i])));
  }
  return s;
}

ParametricState parametric_state(const ScaledGeometry& geom, Real t, std::optional<int> nu) {
  return parametric_state_from_offset(geom, t - (geom.hi() - geom.lo()), nu);
}

BandSupport endpoints(const ScaledGeometry& geom, Real x, BoundarySide side) {
  const auto report = asymptotics::classify(geom, x, side);
  BandSupport s;
  s.scenario = report.scenario;
  s.regime = report.regime;
  s.geometry = geom;
  s.x = x;
  s.near_wall = geom.lo();
  s.far_wall = geom.symmetric() ? geom.lo() : geom.hi();
  const Real l = s.near_wall;
  const Real m = s.far_wall;
  const Real sx = std::sqrt(x);

  if (geom.symmetric()) {
    switch (report.regime) {
      case Regime::I:
        s.a = (sx - (2 * l - 1)) / (sx - 1);
        s.b = (sx - 1 + 2 * l) / (sx + 1);
        break;
      case Regime::II: {
        const Real r = std::sqrt(2 * l - 1);
        const Real q = std::sqrt(sx);
        s.a = (r - q) * (r - q) / (2 * (1 + sx));
        s.b = (r + q) * (r + q) / (2 * (1 + sx));
        break;
      }
      case Regime::III:
        s.a = (1 - sx) / (1 + sx) * (l - 1);
        s.b = (1 + sx) / (1 - sx) * (l - 1);
        break;
    }
  } else if (report.regime == Regime::I) {
    const Real sp = std::sqrt((l - 1) * (m - 1));
    const Real slm = std::sqrt(l * m);
    s.a = (sx - slm - sp) * (sx - sp + slm) / (x - 1);
    s.b = (sx + sp - slm) * (sx + sp + slm) / (x - 1);
  } else {
    const Real offset = asymptotics::t_offset_of_x(geom, x);
    const int nu = report.scenario == Scenario::VBV ? 1 : -1;
    const ParametricState st = parametric_state_from_offset(geom, offset, nu);
    const Real sp = std::sqrt(st.A_plus);
    const Real sm = std::sqrt(st.A_minus);
    s.a = (sp - sm) * (sp - sm);
    s.b = (sp + sm) * (sp + sm);
    s.t = st.t;
    s.nu = nu;
  }

  const Real tol = 1e-12L * std::max<Real>(1, l);
  if (s.a < -tol || s.b > l + tol || s.a > s.b)
    throw ConsistencyError("end-points out of range for scenario " + asymptotics::to_string(s.scenario));
  s.a = std::max<Real>(s.a, 0);
  s.b = std::min(s.b, l);
  s.collapsed = s.b - s.a <= 8 * kEps * std::max<Real>(1, s.b);
  return s;
}

Real band_density(const BandSupport& s, Real from_a, Real to_b) {
  const Real l = s.near_wall, m = s.far_wall, a = s.a, b = s.b;
  const int sign = right_sign(s);
  Real rho = arc(m - a, m - b, from_a, to_b) + sign * arc(l - a, l - b, from_a, to_b) + Real(1 - sign) / 2;
  if (!s.left_saturated()) rho -= 2 * arc(a, b, from_a, to_b);
  return rho;
}

Real density(const BandSupport& s, Real z) {
  if (!(z >= 0 && z <= s.gamma())) throw DomainError("density is defined on [0, gamma]");
  const Real left = s.left_saturated() ? 1 : 0;
  const Real right = s.right_saturated() ? 1 : 0;
  if (z < s.a) return left;
  if (z > s.b) return right;
  if (s.collapsed) return (left + right) / 2;
  return band_density(s, z - s.a, s.b - z);
}

bool on_support(const BandSupport& s, Complex z) {
  const Real lo = s.left_saturated() ? Real(0) : s.a;
  const Real hi = s.right_saturated() ? s.gamma() : s.b;
  return std::fabs(z.imag()) <= kCutGuard && z.real() >= lo - kCutGuard && z.real() <= hi + kCutGuard;
}

Complex gap_logs(const BandSupport& s, Complex z) {
  Complex g = 0;
  if (s.left_saturated()) g += std::log(z / (z - s.a));
  if (s.right_saturated()) g += std::log((z - s.b) / (z - s.gamma()));
  return g;
}

Complex resolvent(const BandSupport& s, Complex z) {
  if (on_support(s, z)) throw DomainError("resolvent evaluated on the support");
  if (s.collapsed) return gap_logs(s, z);
  const Real a = s.a, b = s.b;
  const Complex za = csqrt(z - a);
  const Complex zb = csqrt(z - b);
  const Complex num = s.left_saturated() ? std::sqrt(b - a) * csqrt(z) : std::sqrt(a) * zb + std::sqrt(b) * za;
  auto den = [&](Real w, int sign) { return std::sqrt(w - a) * zb + Real(sign) * std::sqrt(w - b) * za; };
  return std::log(s.x) / 2 + std::log(num / den(s.near_wall, right_sign(s))) + std::log(num / den(s.far_wall, 1));
}

Complex auxiliary_resolvent(const BandSupport& s, Complex z) { return resolvent(s, z) - gap_logs(s, z); }

Real auxiliary_potential(const BandSupport& s, Real u, Real from_a, Real to_b) {
  const Real l = s.near_wall, m = s.far_wall;
  const Real near_gap = (l - s.b) + to_b;
  const Real far_gap = (m - s.b) + to_b;
  Real v = std::log(s.x) - std::log(far_gap);
  v += s.left_saturated() ? 2 * std::log(from_a) : 2 * std::log(u);
  v += s.right_saturated() ? std::log(near_gap) - 2 * std::log(to_b) : -std::log(near_gap);
  return v;
}

Complex resolvent_quadrature(const BandSupport& s, Complex z, Real tolerance) {
  if (on_support(s, z)) throw DomainError("resolvent evaluated on the support");
  if (s.collapsed) return gap_logs(s, z);
  auto integrand = [&](Real u, Real from_a, Real to_b) -> Complex {
    return auxiliary_potential(s, u, from_a, to_b) / (z - u);
  };
  const Complex integral = quadrature::chebyshev_integral_complex(integrand, s.a, s.b, tolerance);
  return csqrt(z - s.a) * csqrt(z - s.b) / (2 * kPi) * integral + gap_logs(s, z);
}

namespace integrals {

Complex basic(Real a, Real b, Complex z) { return kPi / (csqrt(z - a) * csqrt(z - b)); }

Complex log_ratio(Real a, Real b, Real c, Real d, Complex z) {
  const Complex za = csqrt(z - a), zb = csqrt(z - b);
  Complex num, den;
  if (c <= a && d <= a) {
    num = std::sqrt(a - c) * zb + std::sqrt(b - c) * za;
    den = std::sqrt(a - d) * zb + std::sqrt(b - d) * za;
  } else if (c >= b && d >= b) {
    num = std::sqrt(c - a) * zb + std::sqrt(c - b) * za;
    den = std::sqrt(d - a) * zb + std::sqrt(d - b) * za;
  } else {
    throw DomainError("log_ratio needs c, d <= a or c, d >= b");
  }
  return 2 * kPi / (za * zb) * std::log(num / den);
}

Complex log_mixed(Real a, Real b, Real c, Real d, Complex z) {
  if (!(c <= a && b <= d)) throw DomainError("log_mixed needs c <= a and b <= d");
  const Complex za = csqrt(z - a), zb = csqrt(z - b);
  const Complex num = std::sqrt(a - c) * zb + std::sqrt(b - c) * za;
  const Complex den = std::sqrt(d - a) * zb + std::sqrt(d - b) * za;
  return 2 * kPi / (za * zb) * std::log(num / den);
}

Complex f(Real alpha, Real beta, Real a, Real b, Complex z) {
  return std::log(csqrt(alpha * (z - a)) + csqrt(beta * (z - b)));
}

Complex f_jump(Real alpha, Real beta, Real a, Real b, Real x) {
  if (!(x > a && x < b)) throw DomainError("f_jump needs a < x < b");
  return Complex(0, 2 * std::atan(std::sqrt(beta * (b - x) / (alpha * (x - a)))));
}

}  // namespace integrals

Real first_moment(const BandSupport& s) {
  const Real x = s.x;
  const ScaledGeometry& g = s.geometry;
  if (g.symmetric()) {
    const Real l = g.lo();
    switch (s.regime) {
      case Regime::I: return Real(0.5) + (l - 1) * (l - 1) / (x - 1);
      case Regime::II: return (2 * l - 1) / (2 * (1 + std::sqrt(x))) + Real(0.25);
      case Regime::III: return l * l / 2 - (l - 1) * (l - 1) / 2 * (1 + x) / (1 - x);
    }
  }
  const Real l = g.lo(), m = g.hi();
  if (s.regime == Regime::I) return (l - 1) * (m - 1) / (x - 1) + Real(0.5);
  const Real t = s.t ? *s.t : asymptotics::t_of_x(g, x);
  const Real t0 = m - l;
  const Real num = t * t * t + (8 * l * m - 3 * l - 3 * m + 2) * t * t - 3 * t0 * t0 * t + t0 * t0 * (l + m - 2);
  return num / (4 * t * t * (l + m + t));
}

Real first_moment_from_endpoints(const BandSupport& s) {
  const Real l = s.near_wall, m = s.far_wall, a = s.a, b = s.b;
  const Real rl = std::sqrt(l - a) * std::sqrt(l - b);
  const Real rm = std::sqrt(m - a) * std::sqrt(m - b);
  Real e = 2 * l * l + 2 * m * m - (a + b + 2 * m) * rm - right_sign(s) * (a + b + 2 * l) * rl;
  if (!s.left_saturated()) e -= 2 * (a + b) * std::sqrt(a * b);
  return e / 8;
}

Real normalization_quadrature(const BandSupport& s, Real tolerance) {
  Real total = 0;
  if (s.left_saturated()) total += s.a;
  if (s.right_saturated()) total += s.gamma() - s.b;
  if (!s.collapsed) {
    auto f = [&](Real, Real fa, Real tb) { return band_density(s, fa, tb); };
    total += quadrature::endpoint_integral(f, s.a, s.b, tolerance);
  }
  return total;
}

Real first_moment_quadrature(const BandSupport& s, Real tolerance) {
  Real total = 0;
  if (s.left_saturated()) total += s.a * s.a / 2;
  if (s.right_saturated()) total += (s.gamma() - s.b) * (s.gamma() + s.b) / 2;
  if (!s.collapsed) {
    auto f = [&](Real u, Real fa, Real tb) { return u * band_density(s, fa, tb); };
    total += quadrature::endpoint_integral(f, s.a, s.b, tolerance);
  }
  return total;
}

std::array<Real, 2> endpoint_residuals(const BandSupport& s) {
  const Real l = s.near_wall, m = s.far_wall, a = s.a, b = s.b, x = s.x;
  const Real sa = std::sqrt(a), sb = std::sqrt(b);
  const Real la = std::sqrt(l - a), lb = std::sqrt(l - b);
  const Real ma = std::sqrt(m - a), mb = std::sqrt(m - b);
  const Real sx = std::sqrt(x);
  const Real qx = std::sqrt(sx);

  if (s.geometry.symmetric()) {
    switch (s.scenario) {
      case Scenario::VBV: return {(la + lb) / (sa + sb) - qx, l - sa * sb - la * lb - 1};
      case Scenario::SBV: return {(la + lb) / std::sqrt(b - a) - qx, l - la * lb - 1};
      case Scenario::VBS: return {std::sqrt(b - a) / (sa + sb) - qx, l - sa * sb - 1};
      case Scenario::SBS: break;
    }
    throw ConsistencyError("square domain has no SBS scenario");
  }
  switch (s.scenario) {
    case Scenario::SBV: return {(ma + mb) / (la - lb) - sx, m + l - ma * mb - la * lb - 2};
    case Scenario::SBS: return {(ma + mb) / (la + lb) - sx, m + l - ma * mb + la * lb - 2};
    case Scenario::VBV:
    case Scenario::VBS: {
      const Real nu = s.scenario == Scenario::VBV ? 1 : -1;
      return {(sb - sa) / (sb + sa) * (ma + mb) / (la - nu * lb) - sx,
              l + m - nu * la * lb - ma * mb - 2 - 2 * sa * sb};
    }
  }
  throw ConsistencyError("unknown scenario");
}

Real potential(const ScaledGeometry& geom, Real x, Real z, bool allow_walls) {
  geom.require_interior();
  const Real l = geom.lo();
  const Real m = geom.symmetric() ? l : geom.hi();
  const bool inside = z > 0 && z < l;
  const bool wall = allow_walls && (z == 0 || z == l);
  if (!inside && !wall) throw DomainError("potential is defined on (0, gamma)");
  if (!(x > 0)) throw DomainError("x must be positive");
  return 2 * ell(z) + ell(l - z) - ell(l) + ell(m - z) - ell(m) + z * std::log(x);
}

Real potential_derivative(const ScaledGeometry& geom, Real x, Real z) {
  geom.require_interior();
  const Real l = geom.lo();
  const Real m = geom.symmetric() ? l : geom.hi();
  if (!(z > 0 && z < l)) throw DomainError("potential derivative is defined on (0, gamma)");
  if (!(x > 0)) throw DomainError("x must be positive");
  return 2 * std::log(z) - std::log(l - z) - std::log(m - z) + std::log(x);
}

MeasureClosure measure(const ScaledGeometry& geom, Real x, BoundarySide side) {
  MeasureClosure c;
  c.support = endpoints(geom, x, side);
  const BandSupport s = c.support;
  c.density = [s](Real z) { return density(s, z); };
  c.resolvent = [s](Complex z) { return resolvent(s, z); };
  c.first_moment = first_moment(s);
  return c;
}

}  // namespace fv::equilibrium
