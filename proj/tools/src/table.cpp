#include "hyperpam/cli/table.hpp"

#include <cmath>
#include <json.hpp>
#include <ostream>

#include "hyperpam/cli/config.hpp"
#include "hyperpam/errors.hpp"

namespace hyperpam::cli {

Format format_from_string(std::string_view s) {
  if (s == "csv") return Format::Csv;
  if (s == "jsonl") return Format::Jsonl;
  throw ConfigError("--format must be csv or jsonl, got '" + std::string(s) + "'");
}

std::string_view extension(Format f) { return f == Format::Csv ? ".csv" : ".jsonl"; }

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::logic_error("Table::add: row width does not match columns");
  rows.push_back(std::move(row));
}

namespace {

std::string csv_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

nlohmann::ordered_json json_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) {
    if (std::isfinite(*d)) return *d;
    return format_double(*d);
  }
  if (const auto* i = std::get_if<long long>(&c)) return *i;
  return std::get<std::string>(c);
}

}  // namespace

void write_table(std::ostream& os, const Table& table, Format format) {
  if (format == Format::Csv) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) os << (i ? "," : "") << table.columns[i];
    os << '\n';
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
      os << '\n';
    }
    return;
  }
  for (const auto& row : table.rows) {
    nlohmann::ordered_json j;
    for (std::size_t i = 0; i < row.size(); ++i) j[table.columns[i]] = json_cell(row[i]);
    os << j.dump() << '\n';
  }
}

}  // namespace hyperpam::cli
