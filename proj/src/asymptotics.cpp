#include "fivevertex/asymptotics.hpp"

#include <cmath>

#include "fivevertex/errors.hpp"

namespace fv::asymptotics {

namespace {

Real ell(Real u) { return u == 0 ? Real(0) : u * std::log(u); }

void require_rectangular(const ScaledGeometry& geom) {
  geom.require_interior();
  if (geom.symmetric()) throw DomainError("end-point parametrisation needs lambda != mu");
}

// x(t) with t = t0 + d, arranged so that no factor suffers cancellation.
Real x_of_offset(Real l, Real m, Real d) {
  const Real t0 = m - l;
  const Real t = t0 + d;
  const Real num = (1 + t) * (1 + t) * (t + t0) * d;
  const Real den = ((2 * l - 2) * t0 + (2 * l - 1) * d) * ((2 * m - 1) * t + t0);
  return num / den;
}

Real phi_symmetric(Real l, Real x) {
  const Real xc = (2 * l - 1) * (2 * l - 1);
  if (x >= xc) return std::log(x) / 2 + (l - 1) * (l - 1) * std::log1p(-1 / x);
  if (x >= 1 / xc) {
    const Real s = std::sqrt(x);
    return std::log(x) / 4 + (2 * l - 1) * std::log(2 * s / (1 + s)) - psi_equal_args(l);
  }
  return (2 * l - 1) / 2 * std::log(x) + (l - 1) * (l - 1) * std::log1p(-x);
}

}  // namespace

ScaledGeometry::ScaledGeometry(Real lambda, Real mu, Real symmetric_tolerance)
    : lambda_(lambda), mu_(mu), symmetric_tolerance_(symmetric_tolerance) {
  if (!(lambda >= 1) || !(mu >= 1) || !std::isfinite(lambda) || !std::isfinite(mu))
    throw DomainError("lambda and mu must be finite and >= 1");
  if (!(symmetric_tolerance >= 0)) throw DomainError("symmetric tolerance must be non-negative");
}

void ScaledGeometry::require_interior() const {
  if (lambda_ <= 1 || mu_ <= 1) throw DomainError("lambda and mu must both exceed 1");
}

std::string to_string(Scenario s) {
  switch (s) {
    case Scenario::SBV: return "SBV";
    case Scenario::SBS: return "SBS";
    case Scenario::VBV: return "VBV";
    case Scenario::VBS: return "VBS";
  }
  return "?";
}

std::string to_string(Regime r) {
  switch (r) {
    case Regime::I: return "I";
    case Regime::II: return "II";
    case Regime::III: return "III";
  }
  return "?";
}

Real psi(Real a, Real b) {
  if (a < 0 || b < 0) throw DomainError("psi needs a, b >= 0");
  return (ell(a * a) - ell((a + 1) * (a + 1)) + ell(b * b) - ell((b + 1) * (b + 1)) -
          ell((a + b) * (a + b)) + ell((a + b + 1) * (a + b + 1))) /
         4;
}

Real psi_equal_args(Real lambda) {
  if (lambda < 1) throw DomainError("psi_equal_args needs lambda >= 1");
  const Real k = 2 * lambda - 1;
  const Real r = lambda - 1;
  const Real tail = r == 0 ? Real(0) : r * r * (std::log(r) + 2 * std::log(Real(2)));
  return k * k / 2 * std::log(k) - lambda * lambda * std::log(lambda) - tail;
}

CriticalValues critical_values(const ScaledGeometry& geom) {
  geom.require_interior();
  CriticalValues c;
  const Real l = geom.lo();
  const Real m = geom.hi();
  if (geom.symmetric()) {
    c.x_c = (2 * l - 1) * (2 * l - 1);
    c.x_c_tilde = 1 / c.x_c;
    return c;
  }
  const Real sx = std::sqrt(l * m) + std::sqrt((l - 1) * (m - 1));
  c.x_c = sx * sx;
  c.x1 = (m - 1) / (l - 1);
  c.t0 = m - l;
  const Real st = std::sqrt(l * (m - 1)) + std::sqrt((l - 1) * m);
  c.t_c = st * st;
  const Real q = (l + 4) * m - (l - 2) * (l - 2);
  const Real root = std::sqrt(l * (m - l) * q);
  c.t2 = ((l + 1) * (m - l) + root) / (2 * l - 1);
  const Real poly = -l * l * l * l + 2 * l * l * l * m - l * l * m * m - 10 * l * l * l +
                    10 * l * m * m + 12 * l * l - 6 * l * m + 2 * m * m - 4 * m - 4 * l + 2;
  const Real k = 2 * l - 1;
  c.x2 = (poly + q * root) / (2 * k * k * k * (l + m - 1));
  c.sbs_region = l < Real(4) / 3 && m > (2 - l) * (2 - l) / (4 - 3 * l);
  return c;
}

ScenarioReport classify(const ScaledGeometry& geom, Real x, BoundarySide side) {
  if (!(x > 0)) throw DomainError("x must be positive");
  const CriticalValues c = critical_values(geom);
  ScenarioReport r{Scenario::VBV, Regime::II, geom, x, c, false, std::nullopt};
  const Real tol = boundary_tolerance(x);

  auto above = [&](Real v) {
    if (std::fabs(x - v) <= tol) {
      r.on_boundary = true;
      r.boundary = v;
      return side == BoundarySide::Upper;
    }
    return x > v;
  };

  if (geom.symmetric()) {
    if (above(c.x_c)) {
      r.scenario = Scenario::SBV;
      r.regime = Regime::I;
    } else if (above(*c.x_c_tilde)) {
      r.scenario = Scenario::VBV;
      r.regime = Regime::II;
    } else {
      r.scenario = Scenario::VBS;
      r.regime = Regime::III;
    }
    return r;
  }

  if (c.sbs_region) {
    if (above(*c.x1)) {
      r.scenario = Scenario::SBV;
      r.regime = Regime::I;
    } else if (above(c.x_c)) {
      r.scenario = Scenario::SBS;
      r.regime = Regime::I;
    } else {
      r.scenario = Scenario::VBS;
      r.regime = Regime::II;
    }
  } else {
    if (above(c.x_c)) {
      r.scenario = Scenario::SBV;
      r.regime = Regime::I;
    } else if (above(*c.x2)) {
      r.scenario = Scenario::VBV;
      r.regime = Regime::II;
    } else {
      r.scenario = Scenario::VBS;
      r.regime = Regime::II;
    }
  }
  return r;
}

Real x_of_t(const ScaledGeometry& geom, Real t) {
  require_rectangular(geom);
  const Real t0 = geom.hi() - geom.lo();
  if (!(t > t0)) throw DomainError("t must exceed mu - lambda");
  return x_of_offset(geom.lo(), geom.hi(), t - t0);
}

Real x_of_t_offset(const ScaledGeometry& geom, Real offset) {
  require_rectangular(geom);
  if (!(offset > 0)) throw DomainError("t must exceed mu - lambda");
  return x_of_offset(geom.lo(), geom.hi(), offset);
}

Real t_offset_of_x(const ScaledGeometry& geom, Real x) {
  require_rectangular(geom);
  if (!(x > 0) || !std::isfinite(x)) throw DomainError("x must be positive and finite");
  const Real l = geom.lo();
  const Real m = geom.hi();
  auto f = [&](Real d) { return x_of_offset(l, m, d); };

  Real lo = 1, hi = 1;
  constexpr int kMaxSteps = 20000;
  int steps = 0;
  if (f(1) < x) {
    while (f(hi) < x) {
      lo = hi;
      hi *= 2;
      if (++steps > kMaxSteps || !std::isfinite(hi)) throw ConvergenceError("t_of_x bracket", 0);
    }
  } else {
    while (f(lo) >= x) {
      hi = lo;
      lo /= 2;
      if (++steps > kMaxSteps || lo == 0) throw ConvergenceError("t_of_x bracket", 0);
    }
  }
  for (int it = 0; it < kMaxSteps; ++it) {
    const Real mid = hi > 2 * lo ? std::sqrt(lo * hi) : lo + (hi - lo) / 2;
    if (mid <= lo || mid >= hi) break;
    (f(mid) < x ? lo : hi) = mid;
  }
  const Real d = std::fabs(f(lo) - x) <= std::fabs(f(hi) - x) ? lo : hi;
  const Real residual = std::fabs(f(d) - x);
  if (!(residual <= 1e-13L * std::max<Real>(1, x)))
    throw ConvergenceError("t_of_x did not converge", static_cast<double>(residual));
  return d;
}

Real t_of_x(const ScaledGeometry& geom, Real x) {
  return geom.hi() - geom.lo() + t_offset_of_x(geom, x);
}

Real phi_regime_one(const ScaledGeometry& geom, Real x) {
  geom.require_interior();
  if (!(x > 1)) throw DomainError("regime I needs x > 1");
  const Real p = (geom.lo() - 1) * (geom.hi() - 1);
  return std::log(x) / 2 + p * std::log1p(-1 / x);
}

Real phi_regime_one_parametric(const ScaledGeometry& geom, Real t) {
  require_rectangular(geom);
  const Real l = geom.lo();
  const Real m = geom.hi();
  if (!(t > l + m - 2)) throw DomainError("regime I parametrisation needs t > lambda + mu - 2");
  const Real k = (l - 1) * (m - 1);
  const Real c = 2 * l * m - 2 * l - 2 * m + 1;
  return 2 * k * std::log(t) - (2 * k - 1) * std::log(t + 1) - c / 2 * std::log(t + l - m) -
         c / 2 * std::log(t + m - l) + k * std::log(t + l + m) + k * std::log(t - l - m + 2) -
         std::log((2 * l - 1) * t + l - m) / 2 - std::log((2 * m - 1) * t + m - l) / 2;
}

Real phi_regime_two(const ScaledGeometry& geom, Real offset) {
  require_rectangular(geom);
  if (!(offset > 0)) throw DomainError("t must exceed mu - lambda");
  const Real l = geom.lo();
  const Real m = geom.hi();
  const Real t0 = m - l;
  const Real t = t0 + offset;
  const Real two = 2;
  const Real c = ((l - 1) * (l - 1) * std::log(two * (l - 1)) + (m - 1) * (m - 1) * std::log(two * (m - 1)) +
                  l * l * std::log(two * l) + m * m * std::log(two * m)) /
                 2;
  return (l + m - 2) * (l + m - 2) / 2 * std::log(t) +
         (t0 * t0 + 2 * l + 2 * m - 1) / 2 * std::log1p(t) + (2 * l - 1) / 2 * std::log(offset) +
         (2 * m - 1) / 2 * std::log(t + t0) - (l + m - 1) * std::log(t + l + m) -
         (2 * l * l - 2 * l + 1) / 2 * std::log((2 * l - 2) * t0 + (2 * l - 1) * offset) -
         (2 * m * m - 2 * m + 1) / 2 * std::log((2 * m - 1) * t + t0) + c;
}

Real phi_regime_two_parametric(const ScaledGeometry& geom, Real t) {
  return phi_regime_two(geom, t - (geom.hi() - geom.lo()));
}

Real phi(const ScaledGeometry& geom, Real x) {
  geom.require_interior();
  if (!(x > 0)) throw DomainError("x must be positive");
  if (geom.symmetric()) return phi_symmetric(geom.lo(), x);
  const CriticalValues c = critical_values(geom);
  if (x >= c.x_c) return phi_regime_one(geom, x);
  return phi_regime_two(geom, t_offset_of_x(geom, x));
}

Real f2(const ScaledGeometry& geom, Real x) { return std::log(x) / 2 - phi(geom, x); }

Real free_energy(const ScaledGeometry& geom, const exact::WeightParams& w) {
  const Real l = geom.lambda();
  const Real m = geom.mu();
  const Real x = w.x;
  if (!(w.alpha > 0)) throw DomainError("alpha must be positive");
  const Real ratio = (x - 1) / static_cast<Real>(w.delta);
  if (!(ratio > 0)) throw DomainError("(x - 1)/Delta must be positive");
  const Real lm = l * m;
  return -f2(geom, x) / lm - (m - 1) * (l - 1) / lm * std::log(ratio) +
         (lm - 2) / (2 * lm) * std::log(x) - (l - 2) / l * std::log(static_cast<Real>(w.alpha));
}

}  // namespace fv::asymptotics
