#pragma once

#include <gmpxx.h>

#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fivevertex/numeric.hpp"

namespace fv::cli {

enum class Format { Csv, Json };

// Text, integer, real, flag, or exact rational ("p/q").
using Cell = std::variant<std::string, long long, Real, bool, mpq_class>;

struct Table {
  std::vector<std::pair<std::string, Cell>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void meta(std::string key, Cell value) { metadata.emplace_back(std::move(key), std::move(value)); }
};

// Reals use 17 significant digits. Non-finite reals are rejected with
// ConsistencyError so that no NaN or Inf reaches a file.
std::string format_cell(const Cell& cell);

// CSV: "# key: value" metadata lines, one header row, then the rows.
void write_csv(const Table& table, std::ostream& out);
// JSON: {"metadata": {...}, "rows": [{column: value, ...}, ...]}; rationals
// are strings.
void write_json(const Table& table, std::ostream& out);
void write_table(const Table& table, Format format, std::ostream& out);

}  // namespace fv::cli
