#include "fivevertex/cli/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <regex>

#include "CLI11.hpp"
#include "fivevertex/equilibrium.hpp"
#include "fivevertex/errors.hpp"
#include "fivevertex/hankel_mp.hpp"
#include "fivevertex/verify.hpp"
#include "json.hpp"

namespace fv::cli {

using asymptotics::BoundarySide;
using asymptotics::ScaledGeometry;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class T>
const T& need(const std::optional<T>& v, const char* flag) {
  if (!v) throw UsageError(std::string("missing required option ") + flag);
  return *v;
}

ScaledGeometry geometry_of(const RunConfig& c) {
  const ScaledGeometry g(need(c.lambda, "--lambda"), need(c.mu, "--mu"));
  g.require_interior();
  return g;
}

Real real_x(const std::string& text) {
  const Real x = to_real(parse_rational(text));
  if (!(x > 0)) throw DomainError("x must be positive");
  return x;
}

std::vector<Real> x_values(const RunConfig& c) {
  if (c.grid && c.x) throw UsageError("give either --x or an x grid, not both");
  if (c.x) return {real_x(*c.x)};
  if (!c.grid) throw UsageError("missing --x or --x-start/--x-stop/--x-count");
  const XGrid& g = *c.grid;
  if (g.count < 1) throw UsageError("grid count must be at least 1");
  if (g.count > 1 && !(g.start < g.stop)) throw UsageError("grid needs start < stop");
  if (!(g.start > 0)) throw UsageError("grid start must be positive");
  if (g.logarithmic) return verify::log_grid(g.start, g.stop, g.count);
  std::vector<Real> xs;
  for (int i = 0; i < g.count; ++i) xs.push_back(g.count == 1 ? g.start : g.start + (g.stop - g.start) * i / (g.count - 1));
  return xs;
}

void critical_metadata(Table& t, const ScaledGeometry& g) {
  const auto c = asymptotics::critical_values(g);
  t.meta("x_c", c.x_c);
  if (c.x_c_tilde) t.meta("x_c_tilde", *c.x_c_tilde);
  if (const auto v = verify::critical_point(g, verify::CriticalPoint::X1)) t.meta("x1", *v);
  if (const auto v = verify::critical_point(g, verify::CriticalPoint::X2)) t.meta("x2", *v);
  if (c.t0) t.meta("t0", *c.t0);
  if (c.t_c) t.meta("t_c", *c.t_c);
  if (c.t2) t.meta("t2", *c.t2);
  t.meta("sbs_region", c.sbs_region);
}

std::string side_text(BoundarySide s) { return s == BoundarySide::Upper ? "upper" : "lower"; }

// Runs `write` against --output or `out`.
int emit(const RunConfig& c, std::ostream& out, const std::function<void(std::ostream&)>& write) {
  if (c.output.empty()) {
    write(out);
    return kExitOk;
  }
  std::ofstream file(c.output);
  if (!file) throw UsageError("cannot open output file " + c.output);
  write(file);
  return kExitOk;
}

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << " (raise --budget)\n";
  }
  return kExitUsage;
}

}  // namespace

mpq_class parse_rational(const std::string& text) {
  static const std::regex fraction(R"(\s*([+-]?\d+)\s*/\s*(\d+)\s*)");
  static const std::regex decimal(R"(\s*([+-]?)(\d*)(?:\.(\d*))?(?:[eE]([+-]?\d+))?\s*)");
  std::smatch m;
  if (std::regex_match(text, m, fraction)) {
    const mpz_class den(m[2].str(), 10);
    if (den == 0) throw DomainError("zero denominator in " + text);
    mpq_class q(mpz_class(m[1].str(), 10), den);
    q.canonicalize();
    return q;
  }
  if (std::regex_match(text, m, decimal) && (m[2].length() + m[3].length()) > 0) {
    const std::string digits = m[2].str() + m[3].str();
    mpq_class q(mpz_class(digits, 10), 1);
    long exponent = -static_cast<long>(m[3].length());
    if (m[4].matched) exponent += std::stol(m[4].str());
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
    if (exponent >= 0)
      q *= scale;
    else
      q /= scale;
    if (m[1].str() == "-") q = -q;
    q.canonicalize();
    return q;
  }
  throw DomainError("cannot read '" + text + "' as a number");
}

int cmd_exact(const RunConfig& c, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const exact::FiniteModel model(need(c.n, "--N"), need(c.m, "--M"), need(c.l, "--L"));
    const mpq_class x = parse_rational(need(c.x, "--x"));
    if (sgn(x) <= 0) throw DomainError("x must be positive");
    const ExactPolynomial p = exact::p_polynomial(model);
    const mpq_class hankel = exact::tau_hankel(model, x);
    const mpq_class loggas = exact::tau_loggas(model, x, c.budget);
    exact::HighPrecisionOptions hp;
    hp.initial_bits = c.precision_bits;
    const auto log_p = exact::log_p_high_precision(model, x, hp);

    Table t;
    t.meta("command", std::string("exact"));
    t.meta("N", static_cast<long long>(model.N()));
    t.meta("M", static_cast<long long>(model.M()));
    t.meta("L", static_cast<long long>(model.L()));
    t.meta("x", x);
    t.meta("degree", static_cast<long long>(p.degree()));
    t.meta("P_at_inverse_x", p.evaluate(1 / x));
    t.meta("log_P", log_p.log_p);
    t.meta("log_P_bits", static_cast<long long>(log_p.bits));
    t.meta("log_P_precision_warning", log_p.precision_warning);
    t.meta("tau_hankel", hankel);
    t.meta("tau_loggas", loggas);
    t.meta("tau_equal", hankel == loggas);
    t.meta("Z_free_fermion", exact::free_fermion_partition_function(model));
    if (c.delta || c.alpha) {
      const double z = exact::partition_function(model, exact::WeightParams(x.get_d(), need(c.delta, "--delta"),
                                                                            need(c.alpha, "--alpha")));
      if (std::isfinite(z))
        t.meta("Z", static_cast<Real>(z));
      else
        t.meta("Z", std::string("overflow"));
    }
    t.columns = {"power", "coefficient"};
    for (std::size_t i = 0; i < p.coefficients().size(); ++i)
      t.rows.push_back({static_cast<long long>(i), p.coefficients()[i]});
    if (hankel != loggas) err << "warning: the two tau representations differ\n";
    return emit(c, out, [&](std::ostream& o) { write_table(t, c.format, o); });
  });
}

int cmd_scan(const RunConfig& c, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ScaledGeometry g = geometry_of(c);
    const std::vector<Real> xs = x_values(c);
    const bool with_f = c.delta || c.alpha;
    std::vector<exact::WeightParams> weights;
    if (with_f)
      for (Real x : xs)
        weights.emplace_back(static_cast<double>(x), need(c.delta, "--delta"), need(c.alpha, "--alpha"));
    const BoundarySide side = c.boundary_side.value_or(BoundarySide::Upper);
    const verify::ScanResult scan = verify::scenario_scan(g, xs, side);

    Table t;
    t.meta("command", std::string("scan"));
    t.meta("lambda", g.lambda());
    t.meta("mu", g.mu());
    t.meta("symmetric", g.symmetric());
    critical_metadata(t, g);
    t.meta("boundary_side", side_text(side));
    t.meta("regime_count", static_cast<long long>(scan.regime_count));
    t.meta("boundaries_in_grid", static_cast<long long>(scan.boundaries.size()));
    t.meta("max_boundary_jump", scan.max_jump);
    t.columns = {"x", "scenario", "regime", "on_boundary", "a", "b", "E", "phi", "f2"};
    if (with_f) t.columns.push_back("F");
    t.columns.insert(t.columns.end(), {"normalization_residual", "endpoint_residual"});
    for (std::size_t i = 0; i < scan.rows.size(); ++i) {
      const verify::ScanRow& r = scan.rows[i];
      std::vector<Cell> row{r.x,          asymptotics::to_string(r.scenario), asymptotics::to_string(r.regime),
                            r.on_boundary, r.a, r.b, r.first_moment, r.phi, r.f2};
      if (with_f) row.emplace_back(asymptotics::free_energy(g, weights[i]));
      row.emplace_back(r.normalization_residual);
      row.emplace_back(r.endpoint_residual);
      t.rows.push_back(std::move(row));
    }
    return emit(c, out, [&](std::ostream& o) { write_table(t, c.format, o); });
  });
}

int cmd_measure(const RunConfig& c, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ScaledGeometry g = geometry_of(c);
    if (c.grid) throw UsageError("measure takes a single --x");
    const Real x = real_x(need(c.x, "--x"));
    if (c.z_count < 2) throw UsageError("--z-count must be at least 2");
    const BoundarySide side = c.boundary_side.value_or(BoundarySide::Upper);
    const auto report = asymptotics::classify(g, x, side);
    if (report.on_boundary && !c.boundary_side)
      throw UsageError("x collides with the critical value " + format_cell(*report.boundary) +
                       "; choose a side with --boundary-side upper|lower");
    const equilibrium::BandSupport s = equilibrium::endpoints(g, x, side);

    Table t;
    t.meta("command", std::string("measure"));
    t.meta("lambda", g.lambda());
    t.meta("mu", g.mu());
    t.meta("x", x);
    t.meta("scenario", asymptotics::to_string(s.scenario));
    t.meta("regime", asymptotics::to_string(s.regime));
    t.meta("on_boundary", report.on_boundary);
    t.meta("boundary_side", side_text(side));
    t.meta("a", s.a);
    t.meta("b", s.b);
    t.meta("gamma", s.gamma());
    t.meta("E", equilibrium::first_moment(s));
    t.meta("phi", asymptotics::phi(g, x));
    critical_metadata(t, g);
    t.columns = {"z", "region", "rho"};
    for (int i = 0; i < c.z_count; ++i) {
      const Real z = i == c.z_count - 1 ? s.gamma() : s.gamma() * i / (c.z_count - 1);
      const char* region = z < s.a ? (s.left_saturated() ? "saturated" : "void")
                           : z > s.b ? (s.right_saturated() ? "saturated" : "void")
                                     : "band";
      t.rows.push_back({z, std::string(region), equilibrium::density(s, z)});
    }
    const int status = emit(c, out, [&](std::ostream& o) { write_table(t, c.format, o); });

    if (!c.contour_output.empty()) {
      if (c.contour_count < 1) throw UsageError("--contour-count must be positive");
      // A circle enclosing [0, gamma], clear of the band and both gaps.
      const Real centre = s.gamma() / 2, radius = s.gamma() / 2 + Real(0.5);
      Table w;
      w.meta("command", std::string("measure-contour"));
      w.meta("centre", centre);
      w.meta("radius", radius);
      w.columns = {"re_z", "im_z", "re_W", "im_W"};
      for (int k = 0; k < c.contour_count; ++k) {
        const Real theta = 2 * kPi * k / c.contour_count;
        const Complex z = centre + std::polar(radius, theta);
        const Complex v = equilibrium::resolvent(s, z);
        w.rows.push_back({z.real(), z.imag(), v.real(), v.imag()});
      }
      std::ofstream file(c.contour_output);
      if (!file) throw UsageError("cannot open contour output " + c.contour_output);
      write_table(w, c.format, file);
    }
    return status;
  });
}

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  std::vector<std::string> names = c.suites.empty() ? verify::suite_names() : c.suites;
  for (const std::string& n : names) {
    const auto& known = verify::suite_names();
    if (std::find(known.begin(), known.end(), n) == known.end()) {
      err << "error: unknown suite '" << n << "'; known suites:";
      for (const auto& k : known) err << ' ' << k;
      err << '\n';
      return kExitUsage;
    }
  }
  if (c.max_n < 0) {
    err << "error: --max-n must be nonnegative\n";
    return kExitUsage;
  }
  verify::SuiteOptions options;
  options.max_n = c.max_n;
  options.budget = c.budget;
  options.precision_bits = c.precision_bits;

  std::vector<verify::SuiteReport> reports;
  bool all = true;
  for (const std::string& n : names) {
    reports.push_back(verify::run_suite(n, options));
    const bool ok = reports.back().passed();
    all = all && ok;
    err << n << ": " << (ok ? "pass" : "FAIL") << " (" << reports.back().cases.size() << " cases)\n";
  }

  const Format format = c.format_given ? c.format : Format::Json;
  const int status = emit(c, out, [&](std::ostream& o) {
    if (format == Format::Json) {
      nlohmann::ordered_json doc;
      doc["status"] = all ? "pass" : "fail";
      doc["suites"] = nlohmann::ordered_json::array();
      for (const auto& r : reports) {
        nlohmann::ordered_json s;
        s["suite"] = r.name;
        s["status"] = r.passed() ? "pass" : "fail";
        s["cases"] = nlohmann::ordered_json::array();
        for (const auto& k : r.cases) {
          nlohmann::ordered_json e;
          e["key"] = k.key;
          e["status"] = k.passed ? "pass" : "fail";
          e["residuals"] = nlohmann::ordered_json::object();
          for (const auto& [name, v] : k.residuals) e["residuals"][name] = v;
          if (!k.message.empty()) e["message"] = k.message;
          s["cases"].push_back(std::move(e));
        }
        doc["suites"].push_back(std::move(s));
      }
      o << doc.dump(2) << '\n';
    } else {
      Table t;
      t.meta("command", std::string("verify"));
      t.meta("status", std::string(all ? "pass" : "fail"));
      t.columns = {"suite", "key", "status", "message"};
      for (const auto& r : reports)
        for (const auto& k : r.cases)
          t.rows.push_back({r.name, k.key, std::string(k.passed ? "pass" : "fail"), k.message});
      write_csv(t, o);
    }
  });
  if (status != kExitOk) return status;
  return all ? kExitOk : kExitVerificationFailed;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Five-vertex model with scalar-product boundary: exact, asymptotic and equilibrium-measure tools",
               "fivevertex"};
  app.set_config("--config", "", "Read options from a TOML/INI file; command-line flags take precedence");

  RunConfig c;
  std::string command, format, spacing, side;
  double lambda = 0, mu = 0, x_start = 0, x_stop = 0;
  int x_count = 0, n = 0, m = 0, l = 0;
  std::string x;

  app.add_option("command", command, "exact | scan | measure | verify")
      ->required()
      ->check(CLI::IsMember({"exact", "scan", "measure", "verify"}));
  auto* o_lambda = app.add_option("--lambda", lambda, "Aspect ratio L/N");
  auto* o_mu = app.add_option("--mu", mu, "Aspect ratio M/N");
  auto* o_x = app.add_option("--x", x, "Single x (exact: rational such as 1/2)");
  auto* o_start = app.add_option("--x-start", x_start, "Grid start");
  auto* o_stop = app.add_option("--x-stop", x_stop, "Grid stop");
  auto* o_count = app.add_option("--x-count", x_count, "Grid size");
  auto* o_spacing = app.add_option("--x-spacing", spacing, "lin | log (default log)")->check(CLI::IsMember({"lin", "log"}));
  auto* o_n = app.add_option("--N", n, "Number of paths");
  auto* o_m = app.add_option("--M", m, "Horizontal lines");
  auto* o_l = app.add_option("--L", l, "Vertical lines");
  double delta = 0, alpha = 0;
  auto* o_delta = app.add_option("--delta", delta, "Weight parameter Delta");
  auto* o_alpha = app.add_option("--alpha", alpha, "Vertical field alpha");
  auto* o_format = app.add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--output", c.output, "Output file (default: standard output)");
  app.add_option("--precision", c.precision_bits, "Initial MPFR precision in bits")
      ->envname("FIVEVERTEX_PRECISION")
      ->capture_default_str();
  app.add_option("--budget", c.budget, "Work budget for the exact log-gas sum")
      ->envname("FIVEVERTEX_BUDGET")
      ->capture_default_str();
  auto* o_side = app.add_option("--boundary-side", side, "upper | lower: side a critical x belongs to")
                     ->check(CLI::IsMember({"upper", "lower"}));
  app.add_option("--z-count", c.z_count, "measure: density grid size over [0, gamma]")->capture_default_str();
  app.add_option("--contour-output", c.contour_output, "measure: also write W on a circle to this file");
  app.add_option("--contour-count", c.contour_count, "measure: contour points")->capture_default_str();
  app.add_option("--suite", c.suites, "verify: suite to run (repeatable; default all)");
  app.add_option("--max-n", c.max_n, "verify: largest N in the exact sweeps")->capture_default_str();

  try {
    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  if (c.precision_bits < 64) {
    err << "error: --precision must be at least 64 bits\n";
    return kExitUsage;
  }
  if (*o_lambda) c.lambda = lambda;
  if (*o_mu) c.mu = mu;
  if (*o_x) c.x = x;
  if (*o_start || *o_stop || *o_count || *o_spacing) {
    if (!*o_start || !*o_stop || !*o_count) {
      err << "error: an x grid needs --x-start, --x-stop and --x-count\n";
      return kExitUsage;
    }
    c.grid = XGrid{x_start, x_stop, x_count, spacing != "lin"};
  }
  if (*o_n) c.n = n;
  if (*o_m) c.m = m;
  if (*o_l) c.l = l;
  if (*o_delta) c.delta = delta;
  if (*o_alpha) c.alpha = alpha;
  if (*o_format) {
    c.format = format == "json" ? Format::Json : Format::Csv;
    c.format_given = true;
  }
  if (*o_side) c.boundary_side = side == "upper" ? BoundarySide::Upper : BoundarySide::Lower;

  if (command == "exact") return cmd_exact(c, out, err);
  if (command == "scan") return cmd_scan(c, out, err);
  if (command == "measure") return cmd_measure(c, out, err);
  return cmd_verify(c, out, err);
}

}  // namespace fv::cli
