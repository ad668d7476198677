#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "fivevertex/cli/cli.hpp"
#include "fivevertex/errors.hpp"
#include "json.hpp"
#include "oracles.hpp"

using namespace fv;
using namespace fv::cli;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "fivevertex");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

struct Csv {
  std::vector<std::string> meta;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t col(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    FAIL("no column " << name);
    return 0;
  }
  std::string value(const std::string& key) const {
    const std::string prefix = "# " + key + ": ";
    for (const auto& m : meta)
      if (m.rfind(prefix, 0) == 0) return m.substr(prefix.size());
    FAIL("no metadata " << key);
    return {};
  }
};

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  return cells;
}

Csv parse_csv(const std::string& text) {
  Csv csv;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (line.rfind("#", 0) == 0)
      csv.meta.push_back(line);
    else if (csv.header.empty())
      csv.header = split(line);
    else
      csv.rows.push_back(split(line));
  }
  return csv;
}

std::string temp_path(const std::string& name) { return "fv_cli_" + name; }

}  // namespace

TEST_CASE("rational parsing") {
  CHECK(parse_rational("1/2") == mpq_class(1, 2));
  CHECK(parse_rational("4/6") == mpq_class(2, 3));
  CHECK(parse_rational("3") == 3);
  CHECK(parse_rational("0.25") == mpq_class(1, 4));
  CHECK(parse_rational("-1.5e-2") == mpq_class(-3, 200));
  CHECK(parse_rational("2E3") == 2000);
  CHECK(parse_rational(".5") == mpq_class(1, 2));
  CHECK_THROWS_AS(parse_rational("1/0"), DomainError);
  CHECK_THROWS_AS(parse_rational("abc"), DomainError);
  CHECK_THROWS_AS(parse_rational(""), DomainError);
}

TEST_CASE("exact command") {
  const Run r = run({"exact", "--N", "1", "--L", "3", "--M", "2", "--x", "1"});
  REQUIRE(r.code == kExitOk);
  const Csv csv = parse_csv(r.out);
  CHECK(csv.header == std::vector<std::string>{"power", "coefficient"});
  REQUIRE(csv.rows.size() == 2);
  CHECK(csv.rows[0][1] == "1");
  CHECK(csv.rows[1][1] == "1/2");
  CHECK(csv.value("tau_hankel") == "3/2");
  CHECK(csv.value("tau_loggas") == "3/2");
  CHECK(csv.value("tau_equal") == "1");

  // P(1) C(M, N) = PL(L-N, N, M-N).
  const Csv two = parse_csv(run({"exact", "--N", "2", "--L", "5", "--M", "4", "--x", "1"}).out);
  mpq_class p1 = 0;
  for (const auto& row : two.rows) p1 += mpq_class(row[1]);
  CHECK(p1 * oracle::choose(4, 2) == oracle::count_plane_partitions(3, 2, 2));
  CHECK(two.value("Z_free_fermion") == mpq_class(p1 * 6).get_str());

  const Run bad = run({"exact", "--N", "3", "--L", "5", "--M", "2", "--x", "1"});
  CHECK(bad.code == kExitUsage);
  CHECK(bad.err.find("N exceeds M") != std::string::npos);
  CHECK(run({"exact", "--N", "1", "--L", "3", "--M", "2"}).code == kExitUsage);
  const Run starved = run({"exact", "--N", "3", "--L", "8", "--M", "8", "--x", "1", "--budget", "1"});
  CHECK(starved.code == kExitUsage);
  CHECK(starved.err.find("budget") != std::string::npos);

  const Run json = run({"exact", "--N", "1", "--L", "3", "--M", "2", "--x", "1/2", "--format", "json"});
  REQUIRE(json.code == kExitOk);
  const auto doc = nlohmann::json::parse(json.out);
  CHECK(doc["metadata"]["tau_hankel"] == "2");
  CHECK(doc["rows"][1]["coefficient"] == "1/2");

  const Run weighted = run({"exact", "--N", "2", "--L", "4", "--M", "3", "--x", "2", "--delta", "0.5", "--alpha", "1"});
  REQUIRE(weighted.code == kExitOk);
  CHECK(std::isfinite(std::stod(parse_csv(weighted.out).value("Z"))));
  CHECK(run({"exact", "--N", "2", "--L", "4", "--M", "3", "--x", "2", "--delta", "-0.5", "--alpha", "1"}).code ==
        kExitUsage);
}

TEST_CASE("scan command") {
  const Run r = run({"scan", "--lambda", "2", "--mu", "2", "--x-start", "0.01", "--x-stop", "100", "--x-count", "200"});
  REQUIRE(r.code == kExitOk);
  const Csv csv = parse_csv(r.out);
  CHECK(csv.header == std::vector<std::string>{"x", "scenario", "regime", "on_boundary", "a", "b", "E", "phi", "f2",
                                               "normalization_residual", "endpoint_residual"});
  REQUIRE(csv.rows.size() == 200);
  int changes = 0;
  const std::size_t regime = csv.col("regime");
  for (std::size_t i = 1; i < csv.rows.size(); ++i) changes += csv.rows[i][regime] != csv.rows[i - 1][regime];
  CHECK(changes == 2);
  CHECK(csv.value("x_c") == "9");

  // Every numeric cell is finite.
  for (const auto& row : csv.rows) {
    REQUIRE(row.size() == csv.header.size());
    for (const auto& cell : row) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end != cell.c_str() && *end == '\0') CHECK(std::isfinite(v));
      CHECK(cell.find("nan") == std::string::npos);
      CHECK(cell.find("inf") == std::string::npos);
    }
  }

  const Run json = run({"scan", "--lambda", "2", "--mu", "3", "--x-start", "1.5", "--x-stop", "12", "--x-count", "7",
                        "--x-spacing", "lin", "--format", "json", "--delta", "1", "--alpha", "1"});
  REQUIRE(json.code == kExitOk);
  const auto doc = nlohmann::json::parse(json.out);
  REQUIRE(doc["rows"].size() == 7);
  std::set<std::string> keys;
  for (auto it = doc["rows"][0].begin(); it != doc["rows"][0].end(); ++it) keys.insert(it.key());
  CHECK(keys.count("F") == 1);
  for (const auto& row : doc["rows"]) {
    std::set<std::string> k;
    for (auto it = row.begin(); it != row.end(); ++it) k.insert(it.key());
    CHECK(k == keys);
  }
  CHECK(doc["rows"][1]["x"].get<double>() == doctest::Approx(3.25));
  // F needs x > 1 for delta > 0.
  CHECK(run({"scan", "--lambda", "2", "--mu", "3", "--x", "0.5", "--delta", "1", "--alpha", "1"}).code == kExitUsage);

  CHECK(run({"scan", "--lambda", "0.5", "--mu", "2", "--x", "1"}).code == kExitUsage);
  CHECK(run({"scan", "--lambda", "2", "--mu", "2"}).code == kExitUsage);
  CHECK(run({"scan", "--lambda", "2", "--mu", "2", "--x-start", "3", "--x-stop", "1", "--x-count", "4"}).code == kExitUsage);
  CHECK(run({"scan", "--lambda", "2", "--mu", "2", "--x-start", "1", "--x-stop", "3"}).code == kExitUsage);

  const Csv on = parse_csv(run({"scan", "--lambda", "2", "--mu", "2", "--x", "9"}).out);
  CHECK(on.rows[0][on.col("on_boundary")] == "1");
  CHECK(on.rows[0][on.col("scenario")] == "SBV");
  const Csv lower = parse_csv(run({"scan", "--lambda", "2", "--mu", "2", "--x", "9", "--boundary-side", "lower"}).out);
  CHECK(lower.rows[0][lower.col("scenario")] == "VBV");
}

TEST_CASE("output is deterministic") {
  const std::vector<std::string> args = {"scan", "--lambda", "1.2", "--mu", "3", "--x-start", "0.1", "--x-stop", "20",
                                         "--x-count", "50"};
  CHECK(run(args).out == run(args).out);
  const std::vector<std::string> verify = {"verify", "--suite", "macmahon", "--suite", "parametric"};
  CHECK(run(verify).out == run(verify).out);
}

TEST_CASE("measure command") {
  const Run r = run({"measure", "--lambda", "2", "--mu", "2", "--x", "1", "--z-count", "10001"});
  REQUIRE(r.code == kExitOk);
  const Csv csv = parse_csv(r.out);
  CHECK(csv.value("scenario") == "VBV");
  REQUIRE(csv.rows.size() == 10001);
  const std::size_t zc = csv.col("z"), rc = csv.col("rho");
  double trapezoid = 0;
  for (std::size_t i = 0; i < csv.rows.size(); ++i) {
    const double rho = std::stod(csv.rows[i][rc]);
    const double mirror = std::stod(csv.rows[csv.rows.size() - 1 - i][rc]);
    CHECK(std::fabs(rho - mirror) <= 1e-10);
    if (i > 0) {
      const double dz = std::stod(csv.rows[i][zc]) - std::stod(csv.rows[i - 1][zc]);
      trapezoid += dz * (rho + std::stod(csv.rows[i - 1][rc])) / 2;
    }
  }
  CHECK(std::fabs(trapezoid - 1) <= 1e-4);

  const Csv sat = parse_csv(run({"measure", "--lambda", "2", "--mu", "2", "--x", "30", "--z-count", "101"}).out);
  int saturated = 0;
  for (const auto& row : sat.rows)
    if (row[sat.col("region")] == "saturated") {
      ++saturated;
      CHECK(row[sat.col("rho")] == "1");
    }
  CHECK(saturated > 0);

  const Run collide = run({"measure", "--lambda", "2", "--mu", "2", "--x", "9"});
  CHECK(collide.code == kExitUsage);
  CHECK(collide.err.find("--boundary-side") != std::string::npos);
  CHECK(run({"measure", "--lambda", "2", "--mu", "2", "--x", "9", "--boundary-side", "upper"}).code == kExitOk);

  const std::string contour = temp_path("contour.csv");
  const Run w = run({"measure", "--lambda", "2", "--mu", "3", "--x", "3", "--contour-output", contour,
                     "--contour-count", "64"});
  REQUIRE(w.code == kExitOk);
  std::ifstream in(contour);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const Csv wc = parse_csv(buffer.str());
  CHECK(wc.header == std::vector<std::string>{"re_z", "im_z", "re_W", "im_W"});
  CHECK(wc.rows.size() == 64);
  std::remove(contour.c_str());
}

TEST_CASE("verify command") {
  const Run r = run({"verify", "--suite", "equivalence", "--max-n", "3"});
  CHECK(r.code == kExitOk);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["status"] == "pass");
  CHECK(doc["suites"][0]["suite"] == "equivalence");
  CHECK(doc["suites"][0]["cases"].size() == 3);
  for (const auto& c : doc["suites"][0]["cases"]) {
    CHECK(c.contains("key"));
    CHECK(c["status"] == "pass");
    CHECK(c.contains("residuals"));
  }

  const Run unknown = run({"verify", "--suite", "bogus"});
  CHECK(unknown.code == kExitUsage);
  CHECK(unknown.err.find("equivalence") != std::string::npos);
  CHECK(unknown.err.find("regimes") != std::string::npos);

  const Run csv = run({"verify", "--suite", "macmahon", "--format", "csv"});
  CHECK(csv.code == kExitOk);
  CHECK(parse_csv(csv.out).rows.size() == 64);

  const Run all = run({"verify"});
  CHECK(all.code == kExitOk);
  CHECK(nlohmann::json::parse(all.out)["suites"].size() == 10);
}

TEST_CASE("configuration sources") {
  const std::string config = temp_path("config.toml");
  {
    std::ofstream f(config);
    f << "lambda = 2\nmu = 2\nx = \"1\"\nz-count = 11\n";
  }
  const Csv from_file = parse_csv(run({"measure", "--config", config}).out);
  CHECK(from_file.value("x") == "1");
  CHECK(from_file.rows.size() == 11);
  const Csv flag_wins = parse_csv(run({"measure", "--config", config, "--x", "0.5"}).out);
  CHECK(flag_wins.value("x") == "0.5");
  std::remove(config.c_str());

  setenv("FIVEVERTEX_PRECISION", "128", 1);
  const Csv env = parse_csv(run({"exact", "--N", "2", "--L", "4", "--M", "3", "--x", "1"}).out);
  CHECK(env.value("log_P_bits") == "256");
  const Csv flag = parse_csv(run({"exact", "--N", "2", "--L", "4", "--M", "3", "--x", "1", "--precision", "512"}).out);
  CHECK(flag.value("log_P_bits") == "1024");
  unsetenv("FIVEVERTEX_PRECISION");

  CHECK(run({"exact", "--N", "1", "--L", "3", "--M", "2", "--x", "1", "--precision", "32"}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"scan", "--format", "xml"}).code == kExitUsage);
  CHECK(run({"--help"}).code == kExitOk);

  const std::string path = temp_path("out.csv");
  CHECK(run({"exact", "--N", "1", "--L", "3", "--M", "2", "--x", "1", "--output", path}).out.empty());
  std::ifstream in(path);
  std::string first;
  std::getline(in, first);
  CHECK(first == "# command: exact");
  std::remove(path.c_str());
}
