#pragma once

// Bounded intersection of halfspaces by polar duality: with the interior
// point moved to the origin, a·x <= b (b > 0) becomes the dual point a/b.
// Facets of the dual hull are primal vertices and dual hull vertices are
// the non-redundant primal facets.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "morderstats/error.hpp"
#include "morderstats/geometry/hyperplane.hpp"
#include "morderstats/geometry/quickhull.hpp"
#include "morderstats/geometry/region.hpp"
#include "morderstats/linalg.hpp"

namespace morderstats {

/// A closed halfspace bounded by `plane`: side -1 is normal·x <= offset,
/// side +1 is normal·x >= offset.
struct Halfspace {
  Hyperplane plane;
  int side = -1;

  /// The same set written as normal·x <= offset.
  Hyperplane upper_form() const { return side < 0 ? plane : plane.flipped(); }
};

/// Smallest slack offset - normal·x over `halfspaces` (all in upper form).
inline double min_slack(std::span<const Hyperplane> halfspaces, const Vector& x) {
  double m = std::numeric_limits<double>::infinity();
  for (const Hyperplane& h : halfspaces) m = std::min(m, h.offset - h.normal.dot(x));
  return m;
}

namespace detail {

inline bool strictly_inside(std::span<const Hyperplane> halfspaces, const Vector& x, const Tolerance& tol) {
  for (const Hyperplane& h : halfspaces) {
    if (!(h.offset - h.normal.dot(x) > tol.band(h.offset))) return false;
  }
  return true;
}

}  // namespace detail

/// A point strictly inside every halfspace (margin beyond the tolerance
/// band), or nullopt when none is found. Candidates are tried in order; if
/// none qualifies the best one is improved by subgradient ascent on the
/// minimum slack.
inline std::optional<Vector> find_interior_point(std::span<const Hyperplane> halfspaces,
                                                 std::span<const Vector> candidates, const Tolerance& tol,
                                                 int max_iterations = 4000) {
  if (candidates.empty()) return std::nullopt;
  std::size_t best_i = 0;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (detail::strictly_inside(halfspaces, candidates[i], tol)) return candidates[i];
    const double m = min_slack(halfspaces, candidates[i]);
    if (m > best) {
      best = m;
      best_i = i;
    }
  }
  if (halfspaces.empty()) return candidates[best_i];

  Vector x = candidates[best_i];
  Vector best_x = x;
  const double step0 = std::max(std::abs(best), 1e-3 * (1.0 + x.cwiseAbs().maxCoeff()));
  for (int t = 1; t <= max_iterations; ++t) {
    std::size_t tight = 0;
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < halfspaces.size(); ++j) {
      const double s = halfspaces[j].offset - halfspaces[j].normal.dot(x);
      if (s < m) {
        m = s;
        tight = j;
      }
    }
    if (m > best) {
      best = m;
      best_x = x;
      if (detail::strictly_inside(halfspaces, best_x, tol) && t > 50) break;
    }
    x -= (step0 / std::sqrt(static_cast<double>(t))) * halfspaces[tight].normal;
  }
  if (detail::strictly_inside(halfspaces, best_x, tol)) return best_x;
  return std::nullopt;
}

/// Intersection of halfspaces given in upper form (normal·x <= offset).
/// Redundant halfspaces are dropped from the returned facets.
inline ConvexRegion halfspace_intersection(std::span<const Hyperplane> halfspaces, const Vector& interior,
                                           const Tolerance& tol = {}) {
  const auto p = interior.size();
  if (p < 2) throw DimensionError("halfspace_intersection needs dimension >= 2");
  PointSet dual(static_cast<Eigen::Index>(halfspaces.size()), p);
  for (std::size_t i = 0; i < halfspaces.size(); ++i) {
    const Hyperplane& h = halfspaces[i];
    if (h.normal.size() != p) throw DimensionError("halfspace_intersection: dimension mismatch");
    const double slack = h.offset - h.normal.dot(interior);
    if (!(slack > tol.band(h.offset))) throw BadInteriorPoint();
    dual.row(static_cast<Eigen::Index>(i)) = (h.normal / slack).transpose();
  }
  if (dual.rows() < p + 1) throw UnboundedRegion();

  const double eps = detail::hull_eps(dual, tol);
  detail::RawHull raw;
  try {
    raw = detail::quickhull(dual, eps);
  } catch (const DegenerateHull&) {
    throw UnboundedRegion();
  }
  const detail::HullFaces faces = detail::merge_faces(dual, raw);

  ConvexRegion region;
  region.dim = static_cast<int>(p);
  region.affine_rank = static_cast<int>(p);
  for (const Hyperplane& face : faces.planes) {
    if (!(face.offset > eps)) throw UnboundedRegion();
    Vector v = face.normal / face.offset + interior;
    region.vertices.push_back(std::move(v));
  }
  // Near-coincident primal vertices come from dual faces split by rounding.
  double scale = 0.0;
  for (const Vector& v : region.vertices) scale = std::max(scale, v.cwiseAbs().maxCoeff());
  const double merge = 10.0 * (tol.eps_abs + tol.eps_rel * scale);
  std::vector<Vector> unique;
  for (Vector& v : region.vertices) {
    const bool dup = std::any_of(unique.begin(), unique.end(),
                                 [&](const Vector& u) { return (u - v).cwiseAbs().maxCoeff() <= merge; });
    if (!dup) unique.push_back(std::move(v));
  }
  region.vertices = std::move(unique);
  for (std::size_t id : faces.extreme) region.facets.push_back(halfspaces[id]);
  return region;
}

namespace detail {

/// Intersection of upper-form halfspaces (unit normals) that contain
/// opposite pairs, i.e. explicit equalities n·x = b. The region is solved
/// inside the affine subspace the equalities cut out. Returns nullopt when
/// the reduced problem still has no interior point (implicit equalities),
/// an empty region when the constraints are inconsistent.
inline std::optional<ConvexRegion> equality_constrained_intersection(std::span<const Hyperplane> halfspaces,
                                                                     std::span<const Vector> candidates,
                                                                     const Tolerance& tol) {
  if (halfspaces.empty() || candidates.empty()) return std::nullopt;
  const auto p = halfspaces.front().normal.size();
  std::vector<char> is_eq(halfspaces.size(), 0);
  std::vector<std::size_t> eq;
  for (std::size_t i = 0; i < halfspaces.size(); ++i) {
    for (std::size_t j = i + 1; j < halfspaces.size(); ++j) {
      const Hyperplane& a = halfspaces[i];
      const Hyperplane& b = halfspaces[j];
      if ((a.normal + b.normal).cwiseAbs().maxCoeff() <= 1e-12 && std::abs(a.offset + b.offset) <= tol.band(a.offset)) {
        if (!is_eq[i]) eq.push_back(i);
        is_eq[i] = is_eq[j] = 1;
      }
    }
  }
  if (eq.empty()) return std::nullopt;

  ConvexRegion region;
  region.dim = static_cast<int>(p);
  region.facets.assign(halfspaces.begin(), halfspaces.end());

  Matrix e(static_cast<Eigen::Index>(eq.size()), p);
  Vector rhs(static_cast<Eigen::Index>(eq.size()));
  for (std::size_t r = 0; r < eq.size(); ++r) {
    e.row(static_cast<Eigen::Index>(r)) = halfspaces[eq[r]].normal.transpose();
    rhs[static_cast<Eigen::Index>(r)] = halfspaces[eq[r]].offset;
  }
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(e);
  cod.setThreshold(1e-10);
  const Vector x0 = cod.solve(rhs);
  for (std::size_t r = 0; r < eq.size(); ++r) {
    if (std::abs(e.row(static_cast<Eigen::Index>(r)).dot(x0) - rhs[static_cast<Eigen::Index>(r)]) > tol.band(rhs[static_cast<Eigen::Index>(r)])) {
      return region;  // inconsistent equalities: empty
    }
  }
  // Orthonormal basis of the null space of e.
  Eigen::JacobiSVD<Matrix> svd(e, Eigen::ComputeFullV);
  svd.setThreshold(1e-10);
  const auto rank = svd.rank();
  const Matrix basis = svd.matrixV().rightCols(p - rank);
  const auto d = basis.cols();

  // Remaining constraints in subspace coordinates y, x = x0 + basis·y.
  std::vector<Hyperplane> reduced;
  for (std::size_t i = 0; i < halfspaces.size(); ++i) {
    if (is_eq[i]) continue;
    const Hyperplane& h = halfspaces[i];
    const Vector n = basis.transpose() * h.normal;
    const double b = h.offset - h.normal.dot(x0);
    const double norm = n.norm();
    if (norm <= 1e-12) {
      if (b < -tol.band(h.offset)) return region;  // violated everywhere on the subspace
      continue;
    }
    reduced.push_back({n / norm, b / norm});
  }

  auto lift = [&](const Vector& y) -> Vector { return x0 + basis * y; };
  if (d == 0) {
    region.affine_rank = 0;
    region.vertices.push_back(x0);
    return region;
  }
  if (d == 1) {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (const Hyperplane& h : reduced) {
      if (h.normal[0] > 0) hi = std::min(hi, h.offset / h.normal[0]);
      else lo = std::max(lo, h.offset / h.normal[0]);
    }
    if (!std::isfinite(lo) || !std::isfinite(hi)) throw UnboundedRegion();
    const double band = tol.band(std::max(std::abs(lo), std::abs(hi)));
    if (lo > hi + band) return region;
    if (hi - lo <= band) {
      region.affine_rank = 0;
      region.vertices.push_back(lift(Vector::Constant(1, 0.5 * (lo + hi))));
    } else {
      region.affine_rank = 1;
      region.vertices.push_back(lift(Vector::Constant(1, lo)));
      region.vertices.push_back(lift(Vector::Constant(1, hi)));
    }
    return region;
  }
  std::vector<Vector> local;
  for (const Vector& c : candidates) local.push_back(basis.transpose() * (c - x0));
  const std::optional<Vector> interior = find_interior_point(reduced, local, tol);
  if (!interior) return std::nullopt;
  const ConvexRegion sub = halfspace_intersection(std::span<const Hyperplane>(reduced), *interior, tol);
  region.affine_rank = static_cast<int>(d);
  for (const Vector& y : sub.vertices) region.vertices.push_back(lift(y));
  return region;
}

}  // namespace detail

inline ConvexRegion halfspace_intersection(std::span<const Halfspace> halfspaces, const Vector& interior,
                                           const Tolerance& tol = {}) {
  std::vector<Hyperplane> upper;
  upper.reserve(halfspaces.size());
  for (const Halfspace& h : halfspaces) upper.push_back(h.upper_form());
  return halfspace_intersection(std::span<const Hyperplane>(upper), interior, tol);
}

}  // namespace morderstats
