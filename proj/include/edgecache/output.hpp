// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <variant>
#include <vector>

namespace edgecache {

/// Fixed 12-significant-digit scientific rendering, e.g. 6.32120558829e-01.
[[nodiscard]] std::string format_number(double value);

/// A cell of a result table: integer, real, text, or missing.
using Cell = std::variant<std::monostate, long long, double, std::string, std::vector<unsigned>>;

/// Column-ordered result rows rendered as CSV or JSON. Vectors render as
/// semicolon-joined text in CSV and as arrays in JSON.
class ResultTable {
 public:
  explicit ResultTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add_row(std::vector<Cell> row);
  [[nodiscard]] const std::vector<std::string>& columns() const noexcept { return columns_; }
  [[nodiscard]] const std::vector<std::vector<Cell>>& rows() const noexcept { return rows_; }

  [[nodiscard]] std::string to_csv() const;
  [[nodiscard]] std::string to_json() const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

}  // namespace edgecache
