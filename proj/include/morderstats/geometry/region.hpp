#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include <Eigen/QR>

#include "morderstats/error.hpp"
#include "morderstats/geometry/hyperplane.hpp"
#include "morderstats/geometry/quickhull.hpp"
#include "morderstats/linalg.hpp"

namespace morderstats {

/// A bounded convex polytope given by its extreme points and by facet
/// inequalities normal·x <= offset.
///
/// Regions of lower affine rank ("flat" regions, e.g. a single point or a
/// segment in the plane) are represented the same way: the facets then
/// include opposite pairs pinning the orthogonal complement. An empty
/// region has no vertices and affine_rank == -1.
struct ConvexRegion {
  int dim = 0;
  std::vector<Vector> vertices;
  std::vector<Hyperplane> facets;
  /// Row of each vertex in the point set it was built from; empty when
  /// vertices are computed (e.g. by halfspace intersection).
  std::vector<std::size_t> vertex_ids;
  int affine_rank = -1;

  bool full_dimensional() const noexcept { return affine_rank == dim; }
  bool empty() const noexcept { return vertices.empty(); }
};

inline bool contains(const ConvexRegion& region, const Vector& x, const Tolerance& tol = {}) {
  if (x.size() != region.dim) throw DimensionError("contains: dimension mismatch");
  if (region.facets.empty()) return false;
  for (const Hyperplane& f : region.facets) {
    if (f.normal.dot(x) > f.offset + tol.band(f.offset)) return false;
  }
  return true;
}

/// Number of rows of `points` inside `region` (boundary included).
inline std::size_t count_inside(const ConvexRegion& region, const PointSet& points, const Tolerance& tol = {}) {
  if (points.cols() != region.dim) throw DimensionError("count_inside: dimension mismatch");
  if (region.facets.empty()) return 0;
  std::vector<char> inside(points.rows(), 1);
  for (const Hyperplane& f : region.facets) {
    const Vector d = points * f.normal;
    const double limit = f.offset + tol.band(f.offset);
    for (Eigen::Index i = 0; i < d.size(); ++i) {
      if (d(i) > limit) inside[i] = 0;
    }
  }
  return static_cast<std::size_t>(std::count(inside.begin(), inside.end(), char{1}));
}

namespace detail {

inline ConvexRegion region_from_hull(const PointSet& points, const RawHull& raw) {
  const HullFaces faces = merge_faces(points, raw);
  ConvexRegion region;
  region.dim = raw.dim;
  region.affine_rank = raw.dim;
  region.facets = faces.planes;
  region.vertex_ids = faces.extreme;
  for (std::size_t id : faces.extreme) region.vertices.push_back(point(points, id));
  return region;
}

/// Hull of the rows named by `ids`, falling back to a flat region when they
/// do not span R^p. Empty `ids` yields an empty region.
inline ConvexRegion hull_region(const PointSet& points, const std::vector<std::size_t>& ids, const Tolerance& tol) {
  const int p = static_cast<int>(points.cols());
  ConvexRegion region;
  region.dim = p;
  if (ids.empty()) return region;

  const double eps = hull_eps(points, tol);
  const AffineFrame frame = affine_frame(points, ids, eps, p);
  if (frame.rank == p) return region_from_hull(points, quickhull(points, ids, eps));

  const int r = frame.rank;
  region.affine_rank = r;

  // Complement of the frame's span, pinned by opposite facet pairs.
  Matrix complement;
  if (r == 0) {
    complement = Matrix::Identity(p, p);
  } else {
    Eigen::HouseholderQR<Matrix> qr(frame.basis);
    const Matrix q = qr.householderQ() * Matrix::Identity(p, p);
    complement = q.rightCols(p - r);
  }
  for (Eigen::Index j = 0; j < complement.cols(); ++j) {
    const Vector w = complement.col(j);
    const double b = w.dot(frame.origin);
    region.facets.push_back({w, b});
    region.facets.push_back({-w, -b});
  }

  if (r == 0) {
    region.vertex_ids = {frame.chosen.front()};
  } else {
    // Hull inside the affine span, in frame coordinates.
    PointSet local(static_cast<Eigen::Index>(ids.size()), r);
    for (std::size_t i = 0; i < ids.size(); ++i) {
      local.row(static_cast<Eigen::Index>(i)) = (frame.basis.transpose() * (point(points, ids[i]) - frame.origin)).transpose();
    }
    if (r == 1) {
      Eigen::Index lo = 0, hi = 0;
      local.col(0).minCoeff(&lo);
      local.col(0).maxCoeff(&hi);
      const Vector q = frame.basis.col(0);
      region.facets.push_back({q, local(hi, 0) + q.dot(frame.origin)});
      region.facets.push_back({-q, -local(lo, 0) - q.dot(frame.origin)});
      region.vertex_ids = {ids[static_cast<std::size_t>(std::min(lo, hi))], ids[static_cast<std::size_t>(std::max(lo, hi))]};
    } else {
      const RawHull raw = quickhull(local, hull_eps(local, tol));
      const HullFaces faces = merge_faces(local, raw);
      for (const Hyperplane& h : faces.planes) {
        const Vector n = frame.basis * h.normal;
        region.facets.push_back({n, h.offset + n.dot(frame.origin)});
      }
      for (std::size_t local_id : faces.extreme) region.vertex_ids.push_back(ids[local_id]);
    }
  }
  for (std::size_t id : region.vertex_ids) region.vertices.push_back(point(points, id));
  return region;
}

}  // namespace detail

/// Convex hull of a point set spanning R^p. Throws DegenerateHull otherwise.
inline ConvexRegion convex_hull(const PointSet& points, const Tolerance& tol = {}) {
  const int p = dimension(points);
  if (p < 2) throw DimensionError("convex_hull needs dimension >= 2");
  if (points.rows() == 0) throw DegenerateHull(-1, p);
  return detail::region_from_hull(points, detail::quickhull(points, detail::hull_eps(points, tol)));
}

/// Area (p = 2) or volume of a region: its hull is fanned from the vertex
/// centroid into simplices. Flat and empty regions have volume 0.
inline double volume(const ConvexRegion& region) {
  if (!region.full_dimensional() || region.vertices.size() < static_cast<std::size_t>(region.dim) + 1) return 0.0;
  const int p = region.dim;
  PointSet verts(static_cast<Eigen::Index>(region.vertices.size()), p);
  for (std::size_t i = 0; i < region.vertices.size(); ++i) verts.row(static_cast<Eigen::Index>(i)) = region.vertices[i].transpose();
  detail::RawHull raw;
  try {
    raw = detail::quickhull(verts, detail::hull_eps(verts, Tolerance{}));
  } catch (const DegenerateHull&) {
    return 0.0;
  }
  const Vector centroid = verts.colwise().mean().transpose();
  double factorial = 1.0;
  for (int i = 2; i <= p; ++i) factorial *= i;
  double total = 0.0;
  Matrix m(p, p);
  for (const auto& f : raw.facets) {
    for (int i = 0; i < p; ++i) m.col(i) = point(verts, f.vertices[i]) - centroid;
    total += std::abs(m.determinant());
  }
  return total / factorial;
}

/// Rows of `points` lying on at least one facet plane of `region`.
inline std::vector<std::size_t> boundary_point_indices(const PointSet& points, const ConvexRegion& region,
                                                       const Tolerance& tol = {}) {
  if (points.cols() != region.dim) throw DimensionError("boundary_point_indices: dimension mismatch");
  std::vector<char> on(points.rows(), 0);
  for (const Hyperplane& f : region.facets) {
    const Vector d = points * f.normal;
    const double band = tol.band(f.offset);
    for (Eigen::Index i = 0; i < d.size(); ++i) {
      if (std::abs(d(i) - f.offset) <= band) on[i] = 1;
    }
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < on.size(); ++i) {
    if (on[i]) out.push_back(i);
  }
  return out;
}

}  // namespace morderstats
