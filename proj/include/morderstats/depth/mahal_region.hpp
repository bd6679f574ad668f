#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "morderstats/depth/peel_result.hpp"
#include "morderstats/geometry/region.hpp"
#include "morderstats/linalg.hpp"

namespace morderstats {

/// Nearest integer with ties to even. Values within 1e-9 of a half-integer
/// are snapped to it first, so 0.7 * 5 rounds like 3.5.
inline std::size_t round_half_even(double x) {
  const double twice = std::round(2.0 * x);
  if (std::abs(2.0 * x - twice) < 1e-9) x = twice / 2.0;
  const double r = std::nearbyint(x);
  return r <= 0.0 ? 0 : static_cast<std::size_t>(r);
}

/// Number of points kept by the Mahalanobis region for level alpha.
inline std::size_t mahal_selected_count(std::size_t n, double alpha) {
  return round_half_even((1.0 - alpha) * static_cast<double>(n));
}

/// Ids of the `count` points closest to `mean` under the metric `inv_cov`
/// (ties broken by id), in increasing id order.
inline std::vector<std::size_t> mahal_innermost(const PointSet& points, std::size_t count, const Vector& mean,
                                                const SpdMatrix& inv_cov) {
  const std::size_t n = num_points(points);
  std::vector<double> dist(n);
  for (std::size_t i = 0; i < n; ++i) dist[i] = mahalanobis_sq(point(points, i), mean, inv_cov);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return dist[a] < dist[b]; });
  order.resize(std::min(count, n));
  std::sort(order.begin(), order.end());
  return order;
}

/// As above with the sample mean and sample covariance.
inline std::vector<std::size_t> mahal_innermost(const PointSet& points, std::size_t count) {
  return mahal_innermost(points, count, mean_vector(points), invert_spd(sample_covariance(points)));
}

/// Convex hull of the round((1-alpha)n) points nearest the mean in
/// Mahalanobis distance.
inline PeelResult mahal_region(const PointSet& points, double alpha, const Tolerance& tol = {}) {
  detail::check_alpha(alpha);
  detail::check_input(points);
  tol.validate();
  const std::size_t n = num_points(points);
  const int p = dimension(points);
  const std::size_t m = mahal_selected_count(n, alpha);
  if (m < static_cast<std::size_t>(p) + 1) {
    throw InsufficientPoints("mahal selects " + std::to_string(m) + " points, hull needs " + std::to_string(p + 1));
  }
  const std::vector<std::size_t> selected = mahal_innermost(points, m);
  const PointSet chosen_pts = subset(points, selected);
  ConvexRegion hull = convex_hull(chosen_pts, tol);
  for (auto& id : hull.vertex_ids) id = selected[id];

  PeelResult result;
  result.algorithm = Algorithm::mahal;
  result.n = n;
  result.peels.push_back(detail::make_peel(0, std::move(hull), points, tol));
  detail::choose(result, 0, alpha);
  return result;
}

}  // namespace morderstats
