#include "nlskdv/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace nlskdv {

void ResultTable::add_row(std::vector<Cell> cells, bool blow_up) {
  if (cells.size() != columns_.size())
    throw ArgumentError("ResultTable: row width != column count");
  if (!blow_up) {
    for (const auto& c : cells)
      if (const double* v = std::get_if<double>(&c); v && !std::isfinite(*v))
        throw ArgumentError("ResultTable: non-finite value in a row not flagged as blow-up");
  }
  rows_.push_back(Row{std::move(cells), blow_up});
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

std::string render(const Cell& c) {
  if (const double* v = std::get_if<double>(&c)) return format_number(*v);
  return quote(std::get<std::string>(c));
}

}  // namespace

void write_results(const ResultTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ArgumentError("write_results: cannot open " + path);
  for (std::size_t i = 0; i < table.columns().size(); ++i) {
    if (i) out << ',';
    out << quote(table.columns()[i]);
  }
  out << '\n';
  for (std::size_t r = 0; r < table.num_rows(); ++r) {
    const auto& cells = table.row(r);
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << ',';
      out << render(cells[i]);
    }
    out << '\n';
  }
  out.flush();
  if (!out) throw ArgumentError("write_results: write failure on " + path);
}

}  // namespace nlskdv
