#pragma once

#include <cstddef>
#include <vector>

#include "morderstats/depth/halfspace_peel.hpp"
#include "morderstats/depth/peel_result.hpp"
#include "morderstats/geometry/region.hpp"

namespace morderstats {

/// Direct convex-hull peeling: strip the points on the hull of the active
/// set until at most (1-alpha)n remain, take the hull of the remainder too,
/// and return the hull whose point count is closest to (1-alpha)n.
inline PeelResult direct_peel(const PointSet& points, double alpha, const Tolerance& tol = {}) {
  detail::check_alpha(alpha);
  detail::check_input(points);
  tol.validate();
  const std::size_t n = num_points(points);
  const double target = (1.0 - alpha) * static_cast<double>(n);

  PeelResult result;
  result.algorithm = Algorithm::direct;
  result.n = n;

  ActiveSet active = ActiveSet::all(n);
  while (!active.ids.empty()) {
    ConvexRegion hull = detail::hull_region(points, active.ids, tol);
    const bool flat = !hull.full_dimensional();
    result.peels.push_back(detail::make_peel(active.k, std::move(hull), points, tol));
    if (static_cast<double>(active.ids.size()) <= target) break;
    if (flat) {
      // Fewer than p+1 independent points left above the threshold.
      result.status = PeelStatus::insufficient_points;
      break;
    }
    std::vector<std::size_t> boundary;
    const PointSet active_pts = subset(points, active.ids);
    for (std::size_t local : boundary_point_indices(active_pts, result.peels.back().region, tol)) {
      boundary.push_back(active.ids[local]);
    }
    active.ids = detail::without(active.ids, boundary);
    ++active.k;
  }

  detail::choose(result, 0, alpha);
  return result;
}

}  // namespace morderstats
