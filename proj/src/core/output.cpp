// SPDX-License-Identifier: Apache-2.0
#include "edgecache/output.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <json.hpp>
#include <sstream>

#include "edgecache/error.hpp"

namespace edgecache {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.11e", value);
  return buffer;
}

void ResultTable::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size()) throw_invalid("ResultTable: row width mismatch");
  rows_.push_back(std::move(row));
}

namespace {

struct CsvCell {
  std::string operator()(std::monostate) const { return ""; }
  std::string operator()(long long v) const { return std::to_string(v); }
  std::string operator()(double v) const { return format_number(v); }
  std::string operator()(const std::string& v) const { return v; }
  std::string operator()(const std::vector<unsigned>& v) const {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i > 0) out += ';';
      out += std::to_string(v[i]);
    }
    return out;
  }
};

struct JsonCell {
  nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
  nlohmann::ordered_json operator()(long long v) const { return v; }
  // Round through the pinned text form so JSON carries the same 12 digits.
  nlohmann::ordered_json operator()(double v) const {
    if (!std::isfinite(v)) return format_number(v);
    return std::strtod(format_number(v).c_str(), nullptr);
  }
  nlohmann::ordered_json operator()(const std::string& v) const { return v; }
  nlohmann::ordered_json operator()(const std::vector<unsigned>& v) const { return v; }
};

}  // namespace

std::string ResultTable::to_csv() const {
  std::ostringstream out;
  for (std::size_t c = 0; c < columns_.size(); ++c) out << (c ? "," : "") << columns_[c];
  out << '\n';
  for (const auto& row : rows_) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << std::visit(CsvCell{}, row[c]);
    out << '\n';
  }
  return out.str();
}

std::string ResultTable::to_json() const {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : rows_) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < row.size(); ++c) obj[columns_[c]] = std::visit(JsonCell{}, row[c]);
    rows.push_back(std::move(obj));
  }
  return rows.dump(2) + "\n";
}

}  // namespace edgecache
