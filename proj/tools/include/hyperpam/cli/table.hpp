#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace hyperpam::cli {

enum class Format { Csv, Jsonl };

Format format_from_string(std::string_view s);
std::string_view extension(Format f);

using Cell = std::variant<double, long long, std::string>;

/// Column-oriented result written either as CSV or one JSON object per row.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
};

void write_table(std::ostream& os, const Table& table, Format format);

}  // namespace hyperpam::cli
