#include "moralnet/io.hpp"

#include "moralnet/error.hpp"

#include <fmt/format.h>

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace moralnet::io {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(fmt::format("cannot open '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError(fmt::format("cannot write '{}'", path.string()));
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw ConfigError(fmt::format("short write to '{}'", path.string()));
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    auto line = text.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = nl + 1;
  }
  return lines;
}

std::string_view trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n\f\v";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::string format_double(double v) {
  if (v == 0.0) return "0";  // folds -0
  return fmt::format("{}", v);
}

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
  append(header);
}

void CsvWriter::add_row(CsvRow row) {
  if (row.size() != columns_)
    throw std::logic_error(fmt::format("csv row has {} fields, expected {}", row.size(), columns_));
  append(row);
  ++rows_;
}

void CsvWriter::append(const CsvRow& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out_ += ',';
    const auto& f = row[i];
    if (f.find_first_of(",\"\n\r") == std::string::npos) {
      out_ += f;
      continue;
    }
    out_ += '"';
    for (char c : f) {
      if (c == '"') out_ += '"';
      out_ += c;
    }
    out_ += '"';
  }
  out_ += '\n';
}

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw std::out_of_range(fmt::format("missing column '{}'", name));
}

CsvTable parse_csv(std::string_view text, const std::string& stage, const std::string& source) {
  CsvTable table;
  CsvRow row;
  std::string field;
  bool quoted = false;
  bool have_row = false;
  std::size_t line = 1;
  std::size_t row_line = 1;

  auto finish_row = [&] {
    if (row.empty() && field.empty()) {  // blank line
      have_row = false;
      return;
    }
    row.push_back(std::move(field));
    field.clear();
    if (table.header.empty()) {
      table.header = std::move(row);
    } else {
      if (row.size() != table.header.size())
        throw DataError(stage, source, row_line,
                        fmt::format("expected {} fields, found {}", table.header.size(), row.size()));
      table.rows.push_back(std::move(row));
      table.line_numbers.push_back(row_line);
    }
    row.clear();
    have_row = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (!have_row) {
      row_line = line;
      have_row = true;
    }
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        quoted = true;
        break;
      case ',':
        row.push_back(std::move(field));
        field.clear();
        break;
      case '\r':
        break;
      case '\n':
        finish_row();
        ++line;
        break;
      default:
        field += c;
    }
  }
  if (quoted) throw DataError(stage, source, row_line, "unterminated quoted field");
  if (have_row) finish_row();
  if (table.header.empty()) throw DataError(stage, source, 1, "missing csv header");
  return table;
}

}  // namespace moralnet::io
