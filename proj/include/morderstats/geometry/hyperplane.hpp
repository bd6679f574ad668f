#pragma once

#include <cmath>
#include <cstddef>

#include "morderstats/error.hpp"
#include "morderstats/linalg.hpp"

namespace morderstats {

struct Tolerance {
  double eps_abs = 1e-9;
  double eps_rel = 1e-9;

  /// Distance within which a point counts as lying on a plane with this offset.
  double band(double offset) const noexcept { return eps_abs + eps_rel * std::abs(offset); }

  void validate() const {
    if (!(eps_abs > 0.0) || !(eps_rel > 0.0)) throw ConfigError("tolerances must be positive");
  }
};

/// The affine plane {x : normal·x = offset} with unit normal. When used as a
/// facet or halfspace it denotes {x : normal·x <= offset}.
struct Hyperplane {
  Vector normal;
  double offset = 0.0;

  double signed_distance(const Vector& x) const { return normal.dot(x) - offset; }

  template <typename Derived>
  double signed_distance(const Eigen::MatrixBase<Derived>& x) const {
    return normal.dot(x.reshaped()) - offset;
  }

  Hyperplane flipped() const { return {-normal, -offset}; }
};

namespace detail {

/// Generalised cross product of the p-1 rows of `diffs` (a (p-1)×p matrix):
/// component j is (-1)^j times the minor with column j removed.
template <typename Derived>
Vector cofactor_normal(const Eigen::MatrixBase<Derived>& diffs) {
  const Eigen::Index p = diffs.cols();
  Vector n(p);
  if (p == 2) {
    n << diffs(0, 1), -diffs(0, 0);
    return n;
  }
  if (p == 3) {
    n << diffs(0, 1) * diffs(1, 2) - diffs(0, 2) * diffs(1, 1),
        diffs(0, 2) * diffs(1, 0) - diffs(0, 0) * diffs(1, 2),
        diffs(0, 0) * diffs(1, 1) - diffs(0, 1) * diffs(1, 0);
    return n;
  }
  Matrix minor(p - 1, p - 1);
  for (Eigen::Index j = 0; j < p; ++j) {
    for (Eigen::Index c = 0, mc = 0; c < p; ++c) {
      if (c == j) continue;
      minor.col(mc++) = diffs.col(c);
    }
    const double det = minor.determinant();
    n(j) = (j % 2 == 0) ? det : -det;
  }
  return n;
}

/// Flips `n` (and `offset`) so the first component with magnitude above
/// 1e-12 is positive.
inline void canonical_sign(Vector& n, double& offset) {
  for (Eigen::Index j = 0; j < n.size(); ++j) {
    if (std::abs(n(j)) > 1e-12) {
      if (n(j) < 0.0) {
        n = -n;
        offset = -offset;
      }
      return;
    }
  }
}

}  // namespace detail

/// Plane through the p rows of `pts` (a p×p block). Throws DegenerateSimplex
/// when the rows are affinely dependent.
template <typename Derived>
Hyperplane hyperplane_through(const Eigen::MatrixBase<Derived>& pts) {
  const Eigen::Index p = pts.cols();
  if (pts.rows() != p || p < 2) throw DimensionError("hyperplane_through needs exactly p points in R^p");
  constexpr int kCols = Derived::ColsAtCompileTime;
  using Diffs = Eigen::Matrix<double, kCols == Eigen::Dynamic ? Eigen::Dynamic : kCols - 1, kCols>;
  Diffs diffs(p - 1, p);
  double scale = 1.0;
  for (Eigen::Index i = 1; i < p; ++i) {
    diffs.row(i - 1) = pts.row(i) - pts.row(0);
    scale *= diffs.row(i - 1).norm();
  }
  Vector n = detail::cofactor_normal(diffs);
  const double norm = n.norm();
  if (!(norm > 1e-12 * scale) || !std::isfinite(norm)) throw DegenerateSimplex();
  n /= norm;
  double offset = 0.0;
  for (Eigen::Index i = 0; i < p; ++i) offset += n.dot(pts.row(i).transpose());
  offset /= static_cast<double>(p);
  detail::canonical_sign(n, offset);
  return {std::move(n), offset};
}

struct SideCounts {
  std::size_t below = 0;
  std::size_t on = 0;
  std::size_t above = 0;
};

inline SideCounts side_counts(const Hyperplane& plane, const PointSet& points, const Tolerance& tol) {
  if (points.cols() != plane.normal.size()) throw DimensionError("side_counts: dimension mismatch");
  const double band = tol.band(plane.offset);
  SideCounts c;
  const Vector d = points * plane.normal;
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    const double s = d(i) - plane.offset;
    if (s > band) {
      ++c.above;
    } else if (s < -band) {
      ++c.below;
    } else {
      ++c.on;
    }
  }
  return c;
}

}  // namespace morderstats
