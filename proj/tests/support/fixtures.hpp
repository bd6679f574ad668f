#pragma once

#include <initializer_list>
#include <vector>

#include "morderstats/linalg.hpp"
#include "support/oracles.hpp"

namespace fixtures {

inline morderstats::PointSet points(std::initializer_list<std::initializer_list<double>> rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto p = static_cast<Eigen::Index>(rows.begin()->size());
  morderstats::PointSet out(n, p);
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (double v : r) out(i, j++) = v;
    ++i;
  }
  return out;
}

inline morderstats::Vector vec(std::initializer_list<double> v) {
  morderstats::Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

inline morderstats::PointSet square_center() { return points({{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}}); }

/// A point set drawn N(0, I) by the test-only generator, then mapped by `l`.
inline morderstats::PointSet correlated(std::size_t n, const morderstats::Matrix& l, std::uint64_t seed) {
  const oracle::Points z = oracle::gaussian_points(n, static_cast<int>(l.rows()), seed);
  return z * l.transpose();
}

inline std::vector<morderstats::Vector> rows_of(const morderstats::PointSet& pts) {
  std::vector<morderstats::Vector> out;
  for (Eigen::Index i = 0; i < pts.rows(); ++i) out.push_back(pts.row(i).transpose());
  return out;
}

}  // namespace fixtures
