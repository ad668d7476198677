#include "fivevertex/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <set>

#include "fivevertex/errors.hpp"

namespace fv::verify {

using asymptotics::critical_values;
using equilibrium::BandSupport;
using equilibrium::endpoints;
using exact::FiniteModel;

namespace {

std::string num(Real v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6Lg", v);
  return buf;
}

int scaled_floor(Real ratio, int n) { return static_cast<int>(std::floor(ratio * n + 1e-9L)); }

Real max_abs(std::initializer_list<Real> values) {
  Real m = 0;
  for (Real v : values) m = std::max(m, std::fabs(v));
  return m;
}

// Rows are nonincreasing sequences of length b with entries in [0, c].
void rows_of(int b, int c, std::vector<int>& row, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(row.size()) == b) {
    out.push_back(row);
    return;
  }
  const int cap = row.empty() ? c : row.back();
  for (int v = 0; v <= cap; ++v) {
    row.push_back(v);
    rows_of(b, c, row, out);
    row.pop_back();
  }
}

bool dominated(const std::vector<int>& lower, const std::vector<int>& upper) {
  for (std::size_t i = 0; i < lower.size(); ++i)
    if (lower[i] > upper[i]) return false;
  return true;
}

}  // namespace

std::string to_string(Lattice lattice) { return lattice == Lattice::Floor ? "floor" : "log-gas"; }

exact::FiniteModel lattice_model(const ScaledGeometry& geom, int n, Lattice lattice) {
  const int l = scaled_floor(geom.lambda(), n);
  const int m = scaled_floor(geom.mu(), n);
  return lattice == Lattice::Floor ? FiniteModel(n, m, l) : FiniteModel(n, m + 1, l + 2);
}

mpq_class exact_rational(Real v) {
  const double hi = static_cast<double>(v);
  const double lo = static_cast<double>(v - hi);
  return mpq_class(hi) + mpq_class(lo);
}

mpz_class count_plane_partitions(int a, int b, int c) {
  if (a < 0 || b < 0 || c < 0) throw DomainError("box sides must be nonnegative");
  if (a == 0 || b == 0) return 1;
  std::vector<std::vector<int>> rows;
  std::vector<int> row;
  rows_of(b, c, row, rows);
  std::vector<mpz_class> ways(rows.size(), 1);
  for (int i = 1; i < a; ++i) {
    std::vector<mpz_class> next(rows.size(), 0);
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t p = 0; p < rows.size(); ++p)
        if (dominated(rows[r], rows[p])) next[r] += ways[p];
    ways = std::move(next);
  }
  mpz_class total = 0;
  for (const auto& w : ways) total += w;
  return total;
}

EquivalenceReport equivalence_sweep(const EquivalenceGrid& grid, std::uint64_t budget) {
  EquivalenceReport report;
  for (int n = std::max(1, grid.min_n); n <= grid.max_n; ++n)
    for (int l = grid.l_min; l <= grid.l_max; ++l)
      for (int m = grid.m_min; m <= grid.m_max; ++m) {
        if (n > std::min(m, l - 1)) continue;
        const FiniteModel model(n, m, l);
        if (exact::loggas_work_estimate(model) > budget) {
          report.skipped_budget += grid.xs.size();
          continue;
        }
        for (const mpq_class& x : grid.xs) {
          const mpq_class h = exact::tau_hankel(model, x);
          const mpq_class g = exact::tau_loggas(model, x, budget);
          ++report.checked;
          if (h != g) {
            report.first_counterexample = EquivalenceCase{n, m, l, x, h, g};
            return report;
          }
        }
      }
  return report;
}

std::vector<ConvergenceRecord> convergence_study(const ScaledGeometry& geom, Real x,
                                                 const std::vector<int>& ns, Lattice lattice,
                                                 const exact::HighPrecisionOptions& options) {
  geom.require_interior();
  if (!(x > 0)) throw DomainError("x must be positive");
  const mpq_class xq = exact_rational(x);
  const Real target = asymptotics::f2(geom, x);
  std::vector<ConvergenceRecord> out;
  for (int n : ns) {
    if (n < 1) throw DomainError("N must be positive");
    const FiniteModel model = lattice_model(geom, n, lattice);
    const exact::HighPrecisionLogP hp = exact::log_p_high_precision(model, xq, options);
    ConvergenceRecord r;
    r.N = n;
    r.x = x;
    r.geometry = geom;
    r.lattice = lattice;
    r.M = model.M();
    r.L = model.L();
    r.finite_value = hp.log_p / (Real(n) * n);
    r.asymptotic_value = target;
    r.error = std::fabs(r.finite_value - target);
    r.bits = hp.bits;
    r.precision_warning = hp.precision_warning;
    out.push_back(r);
  }
  return out;
}

bool converges(const std::vector<ConvergenceRecord>& records, Real cap) {
  if (records.empty()) return false;
  for (std::size_t i = 1; i < records.size(); ++i)
    if (!(records[i].error < records[i - 1].error)) return false;
  return records.back().error <= cap;
}

mpq_class leading_coefficient(const FiniteModel& model) {
  const long n = model.N(), m = model.M(), l = model.L();
  mpq_class r = l <= m + 1 ? mpq_class(exact::macmahon_pl(n, m - l + 1, l - n), exact::binomial(m, n))
                           : mpq_class(exact::macmahon_pl(n, l - m - 1, m - n + 1), exact::binomial(l - 1, n));
  r.canonicalize();
  return r;
}

std::vector<SmallXRecord> small_x_study(const ScaledGeometry& geom, const std::vector<int>& ns,
                                        Lattice lattice) {
  geom.require_interior();
  const Real limit = asymptotics::psi(geom.hi() - geom.lo(), geom.lo() - 1);
  std::vector<SmallXRecord> out;
  for (int n : ns) {
    const FiniteModel model = lattice_model(geom, n, lattice);
    SmallXRecord r;
    r.N = n;
    r.M = model.M();
    r.L = model.L();
    r.finite_value = log_rational(leading_coefficient(model)) / (Real(n) * n);
    r.limit = limit;
    r.error = std::fabs(r.finite_value - limit);
    out.push_back(r);
  }
  return out;
}

std::string to_string(CriticalPoint which) {
  switch (which) {
    case CriticalPoint::Xc: return "x_c";
    case CriticalPoint::XcTilde: return "x_c_tilde";
    case CriticalPoint::X1: return "x1";
    case CriticalPoint::X2: return "x2";
  }
  return "?";
}

std::optional<Real> critical_point(const ScaledGeometry& geom, CriticalPoint which) {
  const auto c = critical_values(geom);
  switch (which) {
    case CriticalPoint::Xc: return c.x_c;
    case CriticalPoint::XcTilde: return c.x_c_tilde;
    case CriticalPoint::X1: return c.sbs_region ? c.x1 : std::nullopt;
    case CriticalPoint::X2: return c.sbs_region ? std::nullopt : c.x2;
  }
  return std::nullopt;
}

std::vector<TransitionProbe> transition_order(const ScaledGeometry& geom, CriticalPoint which,
                                              const std::vector<Real>& hs) {
  const auto x_star = critical_point(geom, which);
  if (!x_star) throw DomainError(to_string(which) + " does not exist for this geometry");
  const auto c = critical_values(geom);

  Real v_star = 0;
  std::function<Real(Real)> phi;
  if (geom.symmetric()) {
    v_star = std::log(*x_star);
    phi = [&geom](Real s) { return asymptotics::phi(geom, std::exp(s)); };
  } else {
    const Real t0 = *c.t0;
    switch (which) {
      case CriticalPoint::Xc: v_star = *c.t_c; break;
      case CriticalPoint::X2: v_star = *c.t2; break;
      default: v_star = asymptotics::t_of_x(geom, *x_star); break;
    }
    const Real t_c = *c.t_c;
    phi = [&geom, t0, t_c](Real t) {
      return t < t_c ? asymptotics::phi_regime_two(geom, t - t0) : asymptotics::phi_regime_one_parametric(geom, t);
    };
  }

  std::vector<TransitionProbe> out;
  for (Real h : hs) {
    if (!(h > 0)) throw DomainError("stencil width must be positive");
    auto diffs = [&](Real v) {
      const Real f0 = phi(v), fp = phi(v + h), fm = phi(v - h), fpp = phi(v + 2 * h), fmm = phi(v - 2 * h);
      return std::array<Real, 4>{f0, (fp - fm) / (2 * h), (fp - 2 * f0 + fm) / (h * h),
                                 (fpp - 2 * fp + 2 * fm - fmm) / (2 * h * h * h)};
    };
    TransitionProbe p;
    p.which = which;
    p.x_star = *x_star;
    p.variable_star = v_star;
    p.stencil_h = h;
    // One-sided limits: linear extrapolation to v* from centres 2h and 4h away.
    auto side = [&](Real sign) {
      const auto near = diffs(v_star + sign * 2 * h);
      const auto far = diffs(v_star + sign * 4 * h);
      std::array<Real, 4> r{};
      for (int k = 0; k < 4; ++k) r[k] = 2 * near[k] - far[k];
      return r;
    };
    p.left = side(-1);
    p.right = side(1);
    Real scale = 0;
    for (int j = -6; j <= 6; ++j) scale = std::max(scale, std::fabs(phi(v_star + j * h)));
    const Real ulps = 64 * std::numeric_limits<Real>::epsilon() * scale;
    // Two sides, |2| + |-1| from the extrapolation, then the stencil weights.
    p.noise = {2 * 3 * ulps, 2 * 3 * ulps / h, 2 * 3 * 4 * ulps / (h * h), 2 * 3 * 3 * ulps / (h * h * h)};
    out.push_back(p);
  }
  return out;
}

TransitionVerdict assess(const std::vector<TransitionProbe>& probes, Real contraction) {
  TransitionVerdict v;
  if (probes.empty()) return v;
  auto vanishes = [&](int order) {
    for (std::size_t i = 1; i < probes.size(); ++i) {
      const Real now = std::fabs(probes[i].jump(order));
      if (now > probes[i].noise[order] && now > contraction * std::fabs(probes[i - 1].jump(order))) return false;
    }
    return true;
  };
  v.lower_orders_vanish = vanishes(0) && vanishes(1) && vanishes(2);
  v.third_jump_vanishes = vanishes(3);
  v.third_jump = probes.back().jump(3);
  Real spread = 0;
  for (std::size_t i = 1; i < probes.size(); ++i)
    spread = std::max(spread, std::fabs(probes[i].jump(3) - probes[i - 1].jump(3)));
  v.third_relative_variation = std::fabs(v.third_jump) > 0 ? spread / std::fabs(v.third_jump) : INFINITY;
  v.third_jump_stable = probes.size() > 1 && v.third_relative_variation <= 0.1L &&
                        std::fabs(v.third_jump) > probes.back().noise[3];
  return v;
}

std::vector<Real> log_grid(Real start, Real stop, int count) {
  if (count < 1) throw DomainError("grid count must be at least 1");
  if (!(start > 0) || (count > 1 && !(start < stop))) throw DomainError("log grid needs 0 < start < stop");
  std::vector<Real> xs;
  if (count == 1) return {start};
  const Real ls = std::log(start), le = std::log(stop);
  for (int i = 0; i < count; ++i) xs.push_back(std::exp(ls + (le - ls) * i / (count - 1)));
  xs.front() = start;
  xs.back() = stop;
  return xs;
}

ScanResult scenario_scan(const ScaledGeometry& geom, const std::vector<Real>& xs, asymptotics::BoundarySide side) {
  geom.require_interior();
  ScanResult res;
  res.geometry = geom;
  std::set<Regime> regimes;
  for (Real x : xs) {
    const auto report = asymptotics::classify(geom, x, side);
    const BandSupport s = endpoints(geom, x, side);
    const auto er = equilibrium::endpoint_residuals(s);
    ScanRow row;
    row.x = x;
    row.scenario = s.scenario;
    row.regime = s.regime;
    row.on_boundary = report.on_boundary;
    row.a = s.a;
    row.b = s.b;
    row.first_moment = equilibrium::first_moment(s);
    row.phi = asymptotics::phi(geom, x);
    row.f2 = asymptotics::f2(geom, x);
    row.normalization_residual = equilibrium::normalization_quadrature(s) - 1;
    row.endpoint_residual = max_abs({er[0], er[1]});
    res.rows.push_back(row);
    regimes.insert(s.regime);
  }
  res.regime_count = static_cast<int>(regimes.size());
  if (xs.empty()) return res;

  struct Point {
    CriticalPoint which;
    Real x;
  };
  std::vector<Point> points;
  for (CriticalPoint w : {CriticalPoint::XcTilde, CriticalPoint::Xc, CriticalPoint::X1, CriticalPoint::X2})
    if (const auto v = critical_point(geom, w)) points.push_back({w, *v});
  std::sort(points.begin(), points.end(), [](const Point& p, const Point& q) { return p.x < q.x; });

  const Real lo = *std::min_element(xs.begin(), xs.end());
  const Real hi = *std::max_element(xs.begin(), xs.end());
  for (const Point& p : points) {
    if (p.x <= lo || p.x >= hi) continue;
    const Real delta = 1e-10L * p.x;
    const BandSupport below = endpoints(geom, p.x - delta);
    const BandSupport above = endpoints(geom, p.x + delta);
    ScanBoundary b{p.which, p.x, above.a - below.a, above.b - below.b,
                   equilibrium::first_moment(above) - equilibrium::first_moment(below)};
    res.max_jump = std::max(res.max_jump, max_abs({b.jump_a, b.jump_b, b.jump_moment}));
    res.boundaries.push_back(b);
  }

  bool ok = std::is_sorted(xs.begin(), xs.end());
  std::size_t seen = 0;
  for (std::size_t i = 1; ok && i < res.rows.size(); ++i) {
    const ScanRow& prev = res.rows[i - 1];
    const ScanRow& cur = res.rows[i];
    bool regime_point = false;
    bool any_point = false;
    for (const Point& p : points) {
      const bool inside = side == asymptotics::BoundarySide::Upper ? (p.x > prev.x && p.x <= cur.x)
                                                                    : (p.x >= prev.x && p.x < cur.x);
      if (inside) {
        any_point = true;
        ++seen;
        if (p.which == CriticalPoint::Xc || p.which == CriticalPoint::XcTilde) regime_point = true;
      }
    }
    if ((prev.scenario != cur.scenario) != any_point) ok = false;
    if ((prev.regime != cur.regime) != regime_point) ok = false;
  }
  res.boundaries_bracketed = ok && seen == res.boundaries.size();
  return res;
}

// ---------------------------------------------------------------------------

bool SuiteReport::passed() const {
  return std::all_of(cases.begin(), cases.end(), [](const CaseResult& c) { return c.passed; });
}

const std::vector<GridPoint>& equilibrium_grid() {
  static const std::vector<GridPoint> grid = {
      {2, 2, 0.02L},    {2, 2, 0.5L},  {2, 2, 1},      {2, 2, 4},        {2, 2, 20},    {2, 2, 100},
      {1.5L, 1.5L, 0.1L}, {1.5L, 1.5L, 1}, {1.5L, 1.5L, 10}, {2, 3, 0.3L}, {2, 3, 3},     {2, 3, 30},
      {1.2L, 3, 0.5L},  {1.2L, 3, 8},  {1.2L, 3, 20},  {3, 2, 2},
  };
  return grid;
}

namespace {

std::string grid_key(const GridPoint& p) {
  return "lambda=" + num(p.lambda) + ",mu=" + num(p.mu) + ",x=" + num(p.x);
}

Real log_derivative_phi(const ScaledGeometry& g, Real x) {
  const Real s = std::log(x);
  auto central = [&](Real h) {
    return (asymptotics::phi(g, std::exp(s + h)) - asymptotics::phi(g, std::exp(s - h))) / (2 * h);
  };
  const Real h = 1e-3L;
  return (4 * central(h / 2) - central(h)) / 3;
}

CaseResult make_case(std::string key) {
  CaseResult c;
  c.key = std::move(key);
  c.passed = true;
  return c;
}

void require(CaseResult& c, const std::string& name, Real value, Real bound) {
  c.residuals[name] = static_cast<double>(value);
  if (!(std::fabs(value) <= bound)) {
    c.passed = false;
    if (!c.message.empty()) c.message += "; ";
    c.message += name + " = " + num(value) + " exceeds " + num(bound);
  }
}

void require_true(CaseResult& c, const std::string& what, bool ok) {
  if (ok) return;
  c.passed = false;
  if (!c.message.empty()) c.message += "; ";
  c.message += what;
}

EquivalenceGrid criterion_grid(int max_n) {
  EquivalenceGrid g;
  g.max_n = max_n;
  g.l_min = 3;
  g.l_max = 9;
  g.m_min = 2;
  g.m_max = 9;
  g.xs = {mpq_class(1, 3), mpq_class(1, 2), mpq_class(1), mpq_class(2), mpq_class(3)};
  return g;
}

std::vector<CaseResult> suite_equivalence(const SuiteOptions& o) {
  std::vector<CaseResult> out;
  for (int n = 1; n <= o.max_n; ++n) {
    EquivalenceGrid g = criterion_grid(n);
    g.min_n = n;
    const EquivalenceReport r = equivalence_sweep(g, o.budget);
    CaseResult c = make_case("N=" + std::to_string(n));
    c.residuals["checked"] = static_cast<double>(r.checked);
    c.residuals["skipped_budget"] = static_cast<double>(r.skipped_budget);
    if (r.first_counterexample) {
      const auto& e = *r.first_counterexample;
      require_true(c, "tau differs at N=" + std::to_string(e.n) + ",M=" + std::to_string(e.m) +
                          ",L=" + std::to_string(e.l) + ",x=" + e.x.get_str(), false);
    }
    require_true(c, "sweep skipped cases over budget", r.skipped_budget == 0);
    out.push_back(c);
  }
  return out;
}

std::vector<CaseResult> suite_p_structure(const SuiteOptions& o) {
  std::vector<CaseResult> out;
  const EquivalenceGrid g = criterion_grid(o.max_n);
  for (int n = 1; n <= g.max_n; ++n)
    for (int l = g.l_min; l <= g.l_max; ++l)
      for (int m = g.m_min; m <= g.m_max; ++m) {
        if (n > std::min(m, l - 1)) continue;
        const FiniteModel model(n, m, l);
        const ExactPolynomial p = exact::p_polynomial(model);
        char key[64];
        std::snprintf(key, sizeof key, "N=%d,M=%d,L=%d", n, m, l);
        CaseResult c = make_case(key);
        require_true(c, "constant term is not 1", p.coefficient(0) == 1);
        require_true(c, "degree mismatch", p.degree() == model.p_degree());
        const ExactPolynomial mirror = exact::p_polynomial(FiniteModel(n, l - 1, m + 1));
        require_true(c, "L <-> M+1 symmetry fails", mirror == p);
        require_true(c, "P(1) C(M,N) differs from PL(L-N,N,M-N)",
                     p.evaluate(1) * exact::binomial(m, n) == exact::macmahon_pl(l - n, n, m - n));
        require_true(c, "leading coefficient mismatch", p.leading_coefficient() == leading_coefficient(model));
        out.push_back(c);
      }
  return out;
}

std::vector<CaseResult> suite_macmahon(const SuiteOptions&) {
  std::vector<CaseResult> out;
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b)
      for (int c = 0; c <= 3; ++c) {
        CaseResult r = make_case(std::to_string(a) + "x" + std::to_string(b) + "x" + std::to_string(c));
        const mpz_class formula = exact::macmahon_pl(a, b, c);
        const mpz_class brute = count_plane_partitions(a, b, c);
        r.residuals["count"] = brute.get_d();
        require_true(r, "formula " + formula.get_str() + " vs enumeration " + brute.get_str(), formula == brute);
        out.push_back(r);
      }
  return out;
}

std::vector<CaseResult> suite_equilibrium(const SuiteOptions&) {
  std::vector<CaseResult> out;
  for (const GridPoint& p : equilibrium_grid()) {
    CaseResult c = make_case(grid_key(p));
    const ScaledGeometry g(p.lambda, p.mu);
    const BandSupport s = endpoints(g, p.x);
    require(c, "normalization", equilibrium::normalization_quadrature(s) - 1, 1e-7L);
    Real below = 0, above = 0;
    for (int i = 0; i <= 2000; ++i) {
      const Real rho = equilibrium::density(s, s.gamma() * i / 2000);
      below = std::min(below, rho);
      above = std::max(above, rho - 1);
    }
    require(c, "density_below_zero", below, 1e-10L);
    require(c, "density_above_one", above, 1e-10L);
    const auto er = equilibrium::endpoint_residuals(s);
    require(c, "endpoint_residual", max_abs({er[0], er[1]}), 1e-10L);
    const Real e = equilibrium::first_moment(s);
    Real tail = 0;
    for (Complex z : {Complex(1e6L, 0), Complex(0, 1e6L)}) {
      const Complex r = z * equilibrium::resolvent(s, z) - Real(1) - e / z;
      tail = std::max(tail, std::abs(r) * std::abs(z));
    }
    require(c, "large_z_tail", tail, 1e-4L);
    Real quad = 0;
    for (Complex z : {Complex(s.gamma() + 1, 0), Complex((s.a + s.b) / 2, 0.5L)})
      quad = std::max(quad, std::abs(equilibrium::resolvent_quadrature(s, z) - equilibrium::resolvent(s, z)));
    require(c, "resolvent_quadrature", quad, 1e-6L);
    out.push_back(c);
  }
  return out;
}

std::vector<CaseResult> suite_moments(const SuiteOptions&) {
  std::vector<CaseResult> out;
  for (const GridPoint& p : equilibrium_grid()) {
    CaseResult c = make_case(grid_key(p));
    const ScaledGeometry g(p.lambda, p.mu);
    const BandSupport s = endpoints(g, p.x);
    const Real e = equilibrium::first_moment(s);
    require(c, "x_dphi_dx", e - log_derivative_phi(g, p.x), 1e-6L);
    require(c, "integral_z_rho", e - equilibrium::first_moment_quadrature(s), 1e-7L);
    out.push_back(c);
  }
  return out;
}

const std::vector<std::pair<Real, Real>> kGeometries = {{2, 2}, {1.5L, 1.5L}, {3, 3}, {2, 3}, {1.2L, 3}, {3, 2}, {1.5L, 4}};

std::string geometry_key(Real l, Real m) { return "lambda=" + num(l) + ",mu=" + num(m); }

std::vector<CaseResult> suite_special_values(const SuiteOptions&) {
  std::vector<CaseResult> out;
  for (auto [l, m] : kGeometries) {
    CaseResult c = make_case(geometry_key(l, m));
    const ScaledGeometry g(l, m);
    require(c, "phi_at_1", asymptotics::phi(g, 1) + asymptotics::psi(l - 1, m - 1), 1e-10L);
    const Real big = 1e8L;
    require(c, "phi_large_x", asymptotics::phi(g, big) - std::log(big) / 2, 1e-6L);
    const Real tiny = 1e-8L;
    const Real limit = -asymptotics::psi(g.hi() - g.lo(), g.lo() - 1);
    require(c, "phi_small_x", asymptotics::phi(g, tiny) - (g.lo() - 0.5L) * std::log(tiny) - limit, 1e-5L);
    out.push_back(c);
  }
  return out;
}

std::vector<CaseResult> suite_transitions(const SuiteOptions&) {
  struct Probe {
    Real l, m;
    CriticalPoint which;
  };
  const std::vector<Probe> probes = {
      {2, 2, CriticalPoint::Xc},     {2, 2, CriticalPoint::XcTilde}, {3, 3, CriticalPoint::Xc},
      {3, 3, CriticalPoint::XcTilde}, {2, 3, CriticalPoint::Xc},      {2, 3, CriticalPoint::X2},
      {1.2L, 3, CriticalPoint::Xc},  {1.2L, 3, CriticalPoint::X1},    {1.5L, 4, CriticalPoint::Xc},
      {1.5L, 4, CriticalPoint::X2},
  };
  std::vector<CaseResult> out;
  for (const Probe& p : probes) {
    CaseResult c = make_case(geometry_key(p.l, p.m) + "," + to_string(p.which));
    const ScaledGeometry g(p.l, p.m);
    const auto list = transition_order(g, p.which);
    const TransitionVerdict v = assess(list);
    for (const auto& pr : list) {
      const std::string h = num(pr.stencil_h);
      for (int k = 0; k < 4; ++k) c.residuals["jump" + std::to_string(k) + "_h=" + h] = static_cast<double>(pr.jump(k));
    }
    c.residuals["third_relative_variation"] = static_cast<double>(v.third_relative_variation);
    require_true(c, "jumps of Phi, Phi', Phi'' do not vanish", v.lower_orders_vanish);
    const bool transition = p.which == CriticalPoint::Xc || p.which == CriticalPoint::XcTilde;
    if (transition)
      require_true(c, "Phi''' jump is not a stable nonzero constant", v.third_jump_stable);
    else
      require_true(c, "Phi''' jump does not vanish", v.third_jump_vanishes);
    out.push_back(c);
  }
  return out;
}

std::vector<CaseResult> suite_convergence(const SuiteOptions& o) {
  std::vector<CaseResult> out;
  exact::HighPrecisionOptions hp;
  hp.initial_bits = std::max(200u, o.precision_bits);
  for (auto [l, m] : std::vector<std::pair<Real, Real>>{{2, 2}, {2, 3}})
    for (Real x : {0.5L, 1.0L, 2.0L}) {
      CaseResult c = make_case(geometry_key(l, m) + ",x=" + num(x));
      const auto records = convergence_study(ScaledGeometry(l, m), x, {8, 16, 32}, Lattice::LogGas, hp);
      for (const auto& r : records) {
        c.residuals["error_N=" + std::to_string(r.N)] = static_cast<double>(r.error);
        require_true(c, "precision warning at N=" + std::to_string(r.N), !r.precision_warning);
      }
      require_true(c, "error not strictly decreasing or above 0.05 at N=32", converges(records, 0.05L));
      out.push_back(c);
    }
  return out;
}

std::vector<CaseResult> suite_parametric(const SuiteOptions&) {
  std::vector<CaseResult> out;
  for (auto [l, m] : std::vector<std::pair<Real, Real>>{{2, 3}, {1.5L, 2.5L}, {1.2L, 3}}) {
    CaseResult c = make_case(geometry_key(l, m));
    const ScaledGeometry g(l, m);
    const auto cv = critical_values(g);
    const Real t0 = *cv.t0, top = 10 * *cv.t_c;
    Real worst = 0, round_trip = 0, prev = 0;
    bool increasing = true;
    for (int i = 1; i <= 100; ++i) {
      const Real t = t0 + (top - t0) * i / 100;
      for (Real r : equilibrium::parametric_state(g, t).residuals(g)) worst = std::max(worst, std::fabs(r));
      const Real x = asymptotics::x_of_t(g, t);
      if (!(x > prev)) increasing = false;
      prev = x;
      round_trip = std::max(round_trip, std::fabs(asymptotics::t_of_x(g, x) - t) / std::max(Real(1), t));
    }
    require(c, "relation_residual", worst, 1e-12L);
    require(c, "t_round_trip", round_trip, 1e-12L);
    require_true(c, "x(t) not strictly increasing", increasing);
    out.push_back(c);
  }
  return out;
}

std::vector<CaseResult> suite_regimes(const SuiteOptions&) {
  std::vector<CaseResult> out;
  const std::vector<Real> xs = log_grid(1e-4L, 1e4L, 161);
  for (auto [l, m] : std::vector<std::pair<Real, Real>>{{2, 2}, {3, 3}, {1.5L, 1.5L}, {2, 3}, {1.2L, 3}, {3, 1.5L}}) {
    CaseResult c = make_case(geometry_key(l, m));
    const ScaledGeometry g(l, m);
    const ScanResult r = scenario_scan(g, xs);
    const int expected = g.symmetric() ? 3 : 2;
    c.residuals["regime_count"] = r.regime_count;
    require_true(c, "found " + std::to_string(r.regime_count) + " regimes, expected " + std::to_string(expected),
                 r.regime_count == expected);
    require_true(c, "scenario changes do not match the critical values", r.boundaries_bracketed);
    require(c, "boundary_jump", r.max_jump, 1e-4L);
    Real norm = 0, ends = 0, ends_on_boundary = 0;
    for (const ScanRow& row : r.rows) {
      norm = std::max(norm, std::fabs(row.normalization_residual));
      Real& slot = row.on_boundary ? ends_on_boundary : ends;
      slot = std::max(slot, row.endpoint_residual);
    }
    require(c, "normalization", norm, 1e-7L);
    require(c, "endpoint_residual", ends, 1e-10L);
    // sqrt(gamma - b) in the equations turns an ulp in b into ~sqrt(eps).
    require(c, "endpoint_residual_on_boundary", ends_on_boundary, 1e-8L);
    out.push_back(c);
  }
  return out;
}

using SuiteFn = std::vector<CaseResult> (*)(const SuiteOptions&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r = {
      {"equivalence", suite_equivalence}, {"p-structure", suite_p_structure},
      {"macmahon", suite_macmahon},       {"equilibrium", suite_equilibrium},
      {"moments", suite_moments},         {"special-values", suite_special_values},
      {"transitions", suite_transitions}, {"convergence", suite_convergence},
      {"parametric", suite_parametric},   {"regimes", suite_regimes},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, fn] : registry()) n.push_back(name);
    return n;
  }();
  return names;
}

SuiteReport run_suite(const std::string& name, const SuiteOptions& options) {
  for (const auto& [n, fn] : registry()) {
    if (n != name) continue;
    SuiteReport report;
    report.name = name;
    report.cases = fn(options);
    std::stable_sort(report.cases.begin(), report.cases.end(),
                     [](const CaseResult& a, const CaseResult& b) { return a.key < b.key; });
    return report;
  }
  std::string known;
  for (const auto& s : suite_names()) known += (known.empty() ? "" : ", ") + s;
  throw DomainError("unknown suite '" + name + "'; known suites: " + known);
}

}  // namespace fv::verify
