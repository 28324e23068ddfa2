#include "qgrav/csv.hpp"

#include <cmath>
#include <charconv>

#include "qgrav/errors.hpp"

namespace qgrav::csv {

namespace {

std::string quoted(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

void Table::meta(const std::string& key, const std::string& value) { meta_.emplace_back(key, value); }

void Table::meta(const std::string& key, double value) { meta_.emplace_back(key, format_number(value)); }

void Table::add_row(std::vector<Field> row) {
  if (row.size() != columns_.size())
    throw Error(ErrorKind::InvalidArgument, "row has " + std::to_string(row.size()) + " fields, header has " +
                                                std::to_string(columns_.size()));
  rows_.push_back(std::move(row));
}

void Table::write(std::ostream& out) const {
  for (const auto& [k, v] : meta_) out << "# " << k << " = " << v << '\n';
  for (std::size_t i = 0; i < columns_.size(); ++i) out << (i ? "," : "") << columns_[i];
  out << '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      std::visit(
          [&](const auto& f) {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, double>) out << format_number(f);
            else if constexpr (std::is_same_v<T, long>) out << f;
            else out << quoted(f);
          },
          row[i]);
    }
    out << '\n';
  }
}

}  // namespace qgrav::csv
