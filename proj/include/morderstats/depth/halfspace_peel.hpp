#pragma once

// Halfspace-depth peeling. All planes through p points are indexed once;
// region k is the intersection of the majority halfspaces of the index-k
// planes (region 0 is the convex hull). Peeling stops at the first region
// holding fewer than (1-alpha)n points and the better of the last two
// regions is returned.

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <map>
#include <optional>
#include <vector>

#include "morderstats/depth/indexed_hyperplanes.hpp"
#include "morderstats/depth/peel_result.hpp"
#include "morderstats/geometry/halfspace_intersection.hpp"
#include "morderstats/geometry/region.hpp"

namespace morderstats {

struct HalfspacePeelOptions {
  /// Worker threads for plane enumeration; 1 runs serially.
  unsigned workers = 1;
};

namespace detail {

inline Vector centroid_of(const PointSet& points, const std::vector<std::size_t>& ids) {
  Vector c = Vector::Zero(points.cols());
  for (std::size_t id : ids) c += point(points, id);
  return c / static_cast<double>(ids.size());
}

/// Region cut out by `halfspaces`. Without an interior, tie planes pin it to
/// a subspace where it is solved exactly; failing that, it is approximated
/// by the hull of the data points it contains.
inline ConvexRegion intersect_indexed_halfspaces(const PointSet& points, const std::vector<Hyperplane>& halfspaces,
                                                 const std::vector<std::size_t>& active, const Tolerance& tol) {
  ConvexRegion scratch;
  scratch.dim = dimension(points);
  scratch.facets = halfspaces;
  std::vector<std::size_t> contained;
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    if (contains(scratch, point(points, static_cast<std::size_t>(i)), tol)) contained.push_back(static_cast<std::size_t>(i));
  }

  std::vector<Vector> candidates;
  if (!active.empty()) candidates.push_back(centroid_of(points, active));
  if (!contained.empty()) candidates.push_back(centroid_of(points, contained));
  candidates.push_back(points.colwise().mean().transpose());
  const std::optional<Vector> interior = find_interior_point(halfspaces, candidates, tol);
  if (interior) return halfspace_intersection(std::span<const Hyperplane>(halfspaces), *interior, tol);
  if (auto flat = equality_constrained_intersection(halfspaces, candidates, tol)) return std::move(*flat);

  ConvexRegion flat = hull_region(points, contained, tol);
  flat.facets = halfspaces;
  return flat;
}

inline std::vector<std::size_t> without(const std::vector<std::size_t>& ids, const std::vector<std::size_t>& removed) {
  std::vector<std::size_t> out;
  std::set_difference(ids.begin(), ids.end(), removed.begin(), removed.end(), std::back_inserter(out));
  return out;
}

}  // namespace detail

inline PeelResult halfspace_peel(const PointSet& points, double alpha, const Tolerance& tol = {},
                                 const HalfspacePeelOptions& options = {}) {
  detail::check_alpha(alpha);
  detail::check_input(points);
  tol.validate();
  const std::size_t n = num_points(points);
  const double target = (1.0 - alpha) * static_cast<double>(n);

  PeelResult result;
  result.algorithm = Algorithm::halfspace;
  result.n = n;

  ActiveSet active = ActiveSet::all(n);
  const std::vector<IndexedHyperplane> planes = enumerate_indexed_hyperplanes(points, active, tol, options.workers);
  std::map<std::size_t, std::vector<std::size_t>> by_index;
  for (std::size_t i = 0; i < planes.size(); ++i) by_index[planes[i].index].push_back(i);

  result.peels.push_back(detail::make_peel(0, convex_hull(points, tol), points, tol));
  while (static_cast<double>(result.peels.back().points_inside) >= target) {
    const Peel& last = result.peels.back();
    active.ids = detail::without(active.ids, boundary_point_indices(points, last.region, tol));

    auto next = by_index.upper_bound(active.k);
    if (next == by_index.end()) {
      result.status = PeelStatus::index_exhausted;
      break;
    }
    for (std::size_t skipped = active.k + 1; skipped < next->first; ++skipped) result.skipped_k.push_back(skipped);
    active.k = next->first;

    std::vector<Hyperplane> halfspaces;
    for (std::size_t i : next->second) majority_halfspaces(planes[i], std::back_inserter(halfspaces));
    ConvexRegion region = detail::intersect_indexed_halfspaces(points, halfspaces, active.ids, tol);
    result.peels.push_back(detail::make_peel(active.k, std::move(region), points, tol));
    const Peel& added = result.peels.back();
    if (!added.region.full_dimensional() && static_cast<double>(added.points_inside) >= target) {
      result.status = PeelStatus::insufficient_points;
    }
  }

  const std::size_t first = result.peels.size() >= 2 ? result.peels.size() - 2 : 0;
  detail::choose(result, first, alpha);
  return result;
}

}  // namespace morderstats
