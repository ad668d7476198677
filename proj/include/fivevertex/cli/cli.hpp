#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "fivevertex/asymptotics.hpp"
#include "fivevertex/cli/output.hpp"
#include "fivevertex/exact.hpp"

namespace fv::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

enum class Command { Exact, Scan, Measure, Verify };

struct XGrid {
  Real start = 0;
  Real stop = 0;
  int count = 1;
  bool logarithmic = true;
};

struct RunConfig {
  Command command = Command::Exact;
  std::optional<Real> lambda, mu;
  std::optional<std::string> x;  // rational text for exact, real elsewhere
  std::optional<XGrid> grid;
  std::optional<int> n, m, l;
  std::optional<double> delta, alpha;
  Format format = Format::Csv;
  bool format_given = false;
  std::string output;  // empty: standard output
  unsigned precision_bits = 256;
  std::uint64_t budget = exact::kDefaultWorkBudget;
  std::optional<asymptotics::BoundarySide> boundary_side;
  int z_count = 1001;
  std::string contour_output;
  int contour_count = 256;
  std::vector<std::string> suites;
  int max_n = 4;
};

// Parses "p/q", integers and decimals ("0.25", "1e-3") into an exact rational.
mpq_class parse_rational(const std::string& text);

int cmd_exact(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_scan(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_measure(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);

// Full command line, argv[0] included. Output goes to --output when given,
// otherwise to `out`; diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fv::cli
