#pragma once

// Comma-separated tables with '#'-prefixed metadata lines ahead of the
// header row.

#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace qgrav::csv {

using Field = std::variant<double, long, std::string>;

/// Shortest round-trip decimal form; inf/nan spelled out.
std::string format_number(double v);

class Table {
 public:
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void meta(const std::string& key, const std::string& value);
  void meta(const std::string& key, double value);
  /// Throws InvalidArgument when the row width differs from the header.
  void add_row(std::vector<Field> row);

  const std::vector<std::string>& columns() const noexcept { return columns_; }
  const std::vector<std::pair<std::string, std::string>>& metadata() const noexcept { return meta_; }
  const std::vector<std::vector<Field>>& rows() const noexcept { return rows_; }
  std::size_t size() const noexcept { return rows_.size(); }

  void write(std::ostream& out) const;

 private:
  std::vector<std::pair<std::string, std::string>> meta_;
  std::vector<std::string> columns_;
  std::vector<std::vector<Field>> rows_;
};

}  // namespace qgrav::csv
