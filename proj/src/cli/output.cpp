#include "fivevertex/cli/output.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "fivevertex/errors.hpp"
#include "json.hpp"

namespace fv::cli {

namespace {

std::string real_text(Real v) {
  if (!std::isfinite(v)) throw ConsistencyError("non-finite value in output");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", static_cast<double>(v));
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

nlohmann::ordered_json to_json(const Cell& cell) {
  struct Visitor {
    nlohmann::ordered_json operator()(const std::string& s) const { return s; }
    nlohmann::ordered_json operator()(long long v) const { return v; }
    nlohmann::ordered_json operator()(Real v) const {
      // Round trip through the CSV text so both formats carry the same double.
      return std::stod(real_text(v));
    }
    nlohmann::ordered_json operator()(bool v) const { return v; }
    nlohmann::ordered_json operator()(const mpq_class& v) const { return v.get_str(); }
  };
  return std::visit(Visitor{}, cell);
}

}  // namespace

std::string format_cell(const Cell& cell) {
  struct Visitor {
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(long long v) const { return std::to_string(v); }
    std::string operator()(Real v) const { return real_text(v); }
    std::string operator()(bool v) const { return v ? "1" : "0"; }
    std::string operator()(const mpq_class& v) const { return v.get_str(); }
  };
  return std::visit(Visitor{}, cell);
}

void write_csv(const Table& table, std::ostream& out) {
  for (const auto& [key, value] : table.metadata) out << "# " << key << ": " << format_cell(value) << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << csv_escape(table.columns[i]);
  out << '\n';
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) throw ConsistencyError("row width differs from header");
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_escape(format_cell(row[i]));
    out << '\n';
  }
}

void write_json(const Table& table, std::ostream& out) {
  nlohmann::ordered_json doc;
  doc["metadata"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : table.metadata) doc["metadata"][key] = to_json(value);
  doc["columns"] = table.columns;
  doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) throw ConsistencyError("row width differs from header");
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[table.columns[i]] = to_json(row[i]);
    doc["rows"].push_back(std::move(obj));
  }
  out << doc.dump(2) << '\n';
}

void write_table(const Table& table, Format format, std::ostream& out) {
  if (format == Format::Csv)
    write_csv(table, out);
  else
    write_json(table, out);
}

}  // namespace fv::cli
