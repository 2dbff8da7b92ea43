#pragma once

#include <string>
#include <variant>
#include <vector>

#include "nlskdv/errors.hpp"

namespace nlskdv {

using Cell = std::variant<double, std::string>;

struct Provenance {
  std::string config_hash;
  std::string timestamp;
  std::string artifact_version;
};

/// Columnar result table; numeric cells must be finite unless the row is
/// flagged as a blow-up row.
class ResultTable {
 public:
  explicit ResultTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  const std::vector<std::string>& columns() const { return columns_; }
  std::size_t num_rows() const { return rows_.size(); }

  void add_row(std::vector<Cell> cells, bool blow_up = false);
  const std::vector<Cell>& row(std::size_t i) const { return rows_[i].cells; }
  bool row_is_blow_up(std::size_t i) const { return rows_[i].blow_up; }

  Provenance provenance;

 private:
  struct Row {
    std::vector<Cell> cells;
    bool blow_up = false;
  };
  std::vector<std::string> columns_;
  std::vector<Row> rows_;
};

/// CSV with a header row, RFC-style quoting and 17 significant digits;
/// byte-deterministic for identical tables.  Refuses non-finite numbers in
/// rows not flagged as blow-ups.
void write_results(const ResultTable& table, const std::string& path);

/// Formats one numeric cell exactly as write_results does.
std::string format_number(double v);

}  // namespace nlskdv
