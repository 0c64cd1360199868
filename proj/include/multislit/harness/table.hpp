#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace multislit::harness {

/// Column-major-named, row-major numeric table destined for one output file.
struct Table {
  std::string name;  // file stem
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  nlohmann::json meta = nlohmann::json::object();
};

/// Re-checks module invariants by column name before anything is written:
/// visibility/coherence columns in [0, 1], intensity-like columns ≥ -1e-12,
/// every value finite. Throws ValidationError.
void validate_table(const Table& table);

/// %.17g, so identical doubles always print identically.
std::string format_number(double value);

/// Header row, comma separated, '.' decimal, LF line endings.
void write_csv(const Table& table, std::ostream& out);

/// {"meta": {...}, "rows": [{column: value, ...}, ...]}.
void write_json(const Table& table, const nlohmann::json& meta, std::ostream& out);

}  // namespace multislit::harness
