#include "multislit/harness/table.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "multislit/errors.hpp"

namespace multislit::harness {

namespace {

bool is_unit_interval_column(const std::string& column) {
  return column == "visibility" || column == "coherence" || column == "pairwise_coherence" ||
         column == "one_path_knowledge";
}

bool is_nonnegative_column(const std::string& column) {
  return column == "intensity" || column == "density" || column == "ratio" || column == "peak_normalized" ||
         column == "bracket";
}

}  // namespace

void validate_table(const Table& table) {
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) {
      throw ValidationError(table.name + ": row width does not match header");
    }
    for (std::size_t c = 0; c < row.size(); ++c) {
      const auto& column = table.columns[c];
      const double v = row[c];
      if (!std::isfinite(v)) {
        throw ValidationError(table.name + ": non-finite value in column " + column);
      }
      if (is_unit_interval_column(column) && (v < -1e-10 || v > 1.0 + 1e-10)) {
        throw ValidationError(table.name + ": " + column + " value " + format_number(v) + " outside [0, 1]");
      }
      if (is_nonnegative_column(column) && v < -1e-12) {
        throw ValidationError(table.name + ": negative " + column + " " + format_number(v));
      }
    }
  }
}

std::string format_number(double value) {
  std::array<char, 40> buffer{};
  const int len = std::snprintf(buffer.data(), buffer.size(), "%.17g", value);
  return std::string(buffer.data(), static_cast<std::size_t>(len));
}

void write_csv(const Table& table, std::ostream& out) {
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    out << (c ? "," : "") << table.columns[c];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << (c ? "," : "") << format_number(row[c]);
    }
    out << '\n';
  }
}

void write_json(const Table& table, const nlohmann::json& meta, std::ostream& out) {
  nlohmann::json doc;
  doc["meta"] = meta;
  doc["meta"]["columns"] = table.columns;
  auto& rows = doc["rows"] = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json r = nlohmann::json::object();
    for (std::size_t c = 0; c < row.size(); ++c) {
      r[table.columns[c]] = row[c];
    }
    rows.push_back(std::move(r));
  }
  out << doc.dump(2) << '\n';
}

}  // namespace multislit::harness
