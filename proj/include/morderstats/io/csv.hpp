#pragma once

// Point-set CSV: one point per row, comma-separated reals, an optional
// single header row (recognised by a non-numeric first row).

#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "morderstats/error.hpp"
#include "morderstats/linalg.hpp"

namespace morderstats::io {

struct CsvTable {
  std::vector<std::string> header;  // empty when the file has none
  PointSet points;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) return out;
    start = comma + 1;
  }
}

inline std::optional<double> parse_real(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || end != s.data() + s.size()) return std::nullopt;
  return value;
}

inline std::string unquote(std::string_view s) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return std::string(s);
}

}  // namespace detail

/// Parses a point set. Throws CsvError naming the offending (1-based) row.
inline CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::vector<double> values;
  std::size_t columns = 0;
  std::size_t rows = 0;
  std::size_t line_no = 0;
  bool first_row = true;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    const auto fields = detail::split_fields(line);
    if (first_row) {
      first_row = false;
      columns = fields.size();
      bool numeric = true;
      for (auto f : fields) numeric = numeric && detail::parse_real(f).has_value();
      if (!numeric) {
        for (auto f : fields) table.header.push_back(detail::unquote(f));
        continue;
      }
    }
    if (fields.size() != columns) {
      throw CsvError(line_no, "expected " + std::to_string(columns) + " fields, found " + std::to_string(fields.size()));
    }
    for (std::size_t c = 0; c < fields.size(); ++c) {
      const auto v = detail::parse_real(fields[c]);
      if (!v) throw CsvError(line_no, "field " + std::to_string(c + 1) + " is not a number: '" + std::string(fields[c]) + "'");
      if (!std::isfinite(*v)) throw CsvError(line_no, "field " + std::to_string(c + 1) + " is not finite");
      values.push_back(*v);
    }
    ++rows;
  }
  if (rows == 0) throw CsvError(line_no, "no data rows");
  table.points = Eigen::Map<const PointSet>(values.data(), static_cast<Eigen::Index>(rows),
                                            static_cast<Eigen::Index>(columns));
  return table;
}

inline CsvTable read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  return read_csv(in);
}

/// Writes rows with enough digits to round-trip every double.
inline void write_csv(std::ostream& out, const PointSet& points, const std::vector<std::string>& header = {}) {
  const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
  for (std::size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << header[c];
  if (!header.empty()) out << '\n';
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    for (Eigen::Index j = 0; j < points.cols(); ++j) out << (j ? "," : "") << points(i, j);
    out << '\n';
  }
  out.precision(old_precision);
}

}  // namespace morderstats::io
