#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace trapwalk {

/// One table cell: integers print exactly, reals at 17 significant digits.
using Cell = std::variant<std::int64_t, double, std::string>;

/// Column-oriented output shared by the CSV and JSON writers.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

/// `%.17g`; non-finite values print as `inf`, `-inf` or `nan`.
std::string format_real(double x);
std::string format_cell(const Cell& c);

/// Header row, then one line per row; "\n" line endings.
void write_csv(std::ostream& os, const Table& table);

/// Parsed numeric CSV with a header row.
struct CsvData {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  /// Index of `name` in the header; throws ParseError when absent.
  std::size_t column(std::string_view name) const;
};

/// Reads a numeric CSV with a header row. Blank lines are skipped.
CsvData parse_csv(std::string_view content);
CsvData read_csv_file(const std::string& path);

/// Entire file as a string; throws IoError.
std::string read_text_file(const std::string& path);

}  // namespace trapwalk
