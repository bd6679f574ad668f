#pragma once

// Flat experiment tables: summary.csv (one row per cell) and runtime.csv
// (construction seconds laid out by algorithm × alpha, one row per
// (p, n, cov)). Both are RFC-4180 with LF line endings.

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "morderstats/experiments/runner.hpp"

namespace morderstats::io {

inline constexpr std::string_view summary_columns[] = {
    "algorithm", "alpha",          "cov",         "n",               "p",           "error_mu",
    "error_sigma", "error_min",    "error_max",   "alpha_hat_mu",    "alpha_hat_sigma", "too_many_mu",
    "too_many_sigma", "too_few_mu", "too_few_sigma", "volume_mu",    "volume_sigma", "construction_seconds"};

/// Quotes a field when it contains a delimiter, quote or line break.
inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

inline std::string fixed6(double v) {
  if (v == 0.0) v = 0.0;  // no "-0.000000"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

/// Shortest decimal that reads back as `v`.
inline std::string shortest(double v) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

/// Metrics of failed cells are left empty. `construction_seconds` is only
/// filled when `with_timing` is set: wall-clock times would otherwise make
/// identical runs produce different files.
inline void write_summary_csv(std::ostream& out, const std::vector<CellSummary>& cells, bool with_timing) {
  for (std::size_t i = 0; i < std::size(summary_columns); ++i) out << (i ? "," : "") << summary_columns[i];
  out << '\n';
  for (const CellSummary& c : cells) {
    out << csv_field(to_string(c.algorithm)) << ',' << shortest(c.alpha) << ',' << csv_field(to_string(c.cov)) << ','
        << c.n << ',' << c.p;
    const double metrics[] = {c.error_mu,      c.error_sigma,  c.error_min,      c.error_max,
                              c.alpha_hat_mu,  c.alpha_hat_sigma, c.too_many_mu, c.too_many_sigma,
                              c.too_few_mu,    c.too_few_sigma, c.volume_mu,     c.volume_sigma};
    for (double m : metrics) out << ',' << (c.ok ? fixed6(m) : "");
    out << ',' << (c.ok && with_timing ? fixed6(c.construction_seconds) : "") << '\n';
  }
}

/// Construction time per cell arranged like a runtime table: columns
/// `<algorithm>_<alpha>` (algorithms in mahal, direct, halfspace order,
/// alphas descending), rows per (p, n, cov) in first-seen order.
inline void write_runtime_csv(std::ostream& out, const std::vector<CellSummary>& cells) {
  std::vector<double> alphas;
  std::vector<Algorithm> algorithms;
  std::vector<std::tuple<int, std::size_t, CovKind>> rows;
  std::map<std::tuple<int, std::size_t, CovKind, Algorithm, double>, const CellSummary*> lookup;
  for (const CellSummary& c : cells) {
    if (std::find(alphas.begin(), alphas.end(), c.alpha) == alphas.end()) alphas.push_back(c.alpha);
    if (std::find(algorithms.begin(), algorithms.end(), c.algorithm) == algorithms.end()) algorithms.push_back(c.algorithm);
    const auto row = std::make_tuple(c.p, c.n, c.cov);
    if (std::find(rows.begin(), rows.end(), row) == rows.end()) rows.push_back(row);
    lookup[std::make_tuple(c.p, c.n, c.cov, c.algorithm, c.alpha)] = &c;
  }
  std::sort(alphas.begin(), alphas.end(), std::greater<>());
  const Algorithm order[] = {Algorithm::mahal, Algorithm::direct, Algorithm::halfspace};

  out << "p,n,cov";
  for (Algorithm a : order) {
    if (std::find(algorithms.begin(), algorithms.end(), a) == algorithms.end()) continue;
    for (double alpha : alphas) out << ',' << to_string(a) << '_' << shortest(alpha);
  }
  out << '\n';
  for (const auto& [p, n, cov] : rows) {
    out << p << ',' << n << ',' << csv_field(to_string(cov));
    for (Algorithm a : order) {
      if (std::find(algorithms.begin(), algorithms.end(), a) == algorithms.end()) continue;
      for (double alpha : alphas) {
        const auto it = lookup.find(std::make_tuple(p, n, cov, a, alpha));
        out << ',' << (it != lookup.end() && it->second->ok ? fixed6(it->second->construction_seconds) : "");
      }
    }
    out << '\n';
  }
}

}  // namespace morderstats::io
