#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace moralnet::io {

/// Whole-file read. Throws ConfigError when the file cannot be opened.
std::string read_file(const std::filesystem::path& path);

void write_file(const std::filesystem::path& path, std::string_view contents);

/// Splits on '\n', dropping a trailing '\r' from each line. A final empty line
/// after the last newline is not reported.
std::vector<std::string_view> split_lines(std::string_view text);

std::string_view trim(std::string_view s);

/// Formats a double with the shortest representation that round-trips.
std::string format_double(double v);

using CsvRow = std::vector<std::string>;

/// RFC 4180 style: fields containing ',', '"' or newlines are quoted.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);

  void add_row(CsvRow row);
  std::size_t rows() const { return rows_; }
  const std::string& str() const { return out_; }

 private:
  void append(const CsvRow& row);

  std::size_t columns_;
  std::size_t rows_ = 0;
  std::string out_;
};

struct CsvTable {
  CsvRow header;
  std::vector<CsvRow> rows;
  std::vector<std::size_t> line_numbers;  // 1-based source line of each row

  /// Index of a header column; throws std::out_of_range when absent.
  std::size_t column(std::string_view name) const;
};

/// Throws DataError(stage, source, line, ...) on unbalanced quotes or ragged rows.
CsvTable parse_csv(std::string_view text, const std::string& stage, const std::string& source);

}  // namespace moralnet::io
