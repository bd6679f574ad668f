#pragma once

// Small dense linear algebra on top of Eigen: means, covariances, Cholesky,
// SPD inversion and Mahalanobis distances.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "morderstats/error.hpp"

namespace morderstats {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// n points in R^p, one point per row.
using PointSet = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline std::size_t num_points(const PointSet& points) { return static_cast<std::size_t>(points.rows()); }
inline int dimension(const PointSet& points) { return static_cast<int>(points.cols()); }

inline Vector point(const PointSet& points, std::size_t i) {
  return points.row(static_cast<Eigen::Index>(i)).transpose();
}

/// Gathers the rows named by `indices` into a new point set.
template <typename IndexRange>
PointSet subset(const PointSet& points, const IndexRange& indices) {
  PointSet out(static_cast<Eigen::Index>(std::size(indices)), points.cols());
  Eigen::Index r = 0;
  for (auto i : indices) out.row(r++) = points.row(static_cast<Eigen::Index>(i));
  return out;
}

/// Symmetric p×p matrix. Positive definiteness is established by cholesky().
class SpdMatrix {
 public:
  SpdMatrix() = default;

  explicit SpdMatrix(Matrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) throw DimensionError("SpdMatrix must be square");
    if (!m_.allFinite()) throw NotSpd();
    const double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
    if ((m_ - m_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
      throw NotSpd();
    }
  }

  static SpdMatrix identity(int p) { return SpdMatrix(Matrix::Identity(p, p)); }

  const Matrix& matrix() const noexcept { return m_; }
  int dim() const noexcept { return static_cast<int>(m_.rows()); }
  double operator()(int i, int j) const { return m_(i, j); }

 private:
  Matrix m_;
};

class LowerTriangular {
 public:
  explicit LowerTriangular(Matrix l) : l_(std::move(l)) {}

  const Matrix& matrix() const noexcept { return l_; }
  int dim() const noexcept { return static_cast<int>(l_.rows()); }
  double operator()(int i, int j) const { return l_(i, j); }

  Vector operator*(const Vector& z) const { return l_.triangularView<Eigen::Lower>() * z; }

 private:
  Matrix l_;
};

inline Vector mean_vector(const PointSet& points) {
  if (points.rows() == 0) throw EmptyData();
  return points.colwise().mean().transpose();
}

/// Unbiased (divisor n-1) sample covariance. With n <= p the result is
/// singular; that surfaces as NotSpd from cholesky/invert_spd.
inline SpdMatrix sample_covariance(const PointSet& points) {
  const auto n = points.rows();
  if (n < 2) throw DegenerateData("sample covariance needs at least 2 points (n=" + std::to_string(n) + ")");
  const Vector mean = mean_vector(points);
  const Matrix centered = points.rowwise() - mean.transpose();
  Matrix cov = (centered.transpose() * centered) / static_cast<double>(n - 1);
  // Exact symmetry; the product above is symmetric only up to rounding.
  cov = 0.5 * (cov + cov.transpose()).eval();
  return SpdMatrix(std::move(cov));
}

/// L with L·Lᵀ = m. A pivot L(i,i)² not exceeding 1e-12·max diag(m) is
/// treated as a loss of positive definiteness.
inline LowerTriangular cholesky(const SpdMatrix& m) {
  const Matrix& a = m.matrix();
  Eigen::LLT<Matrix> llt(a);
  if (llt.info() != Eigen::Success) throw NotSpd();
  Matrix l = llt.matrixL();
  const double max_diag = a.diagonal().maxCoeff();
  if (!(max_diag > 0.0)) throw NotSpd();
  for (Eigen::Index i = 0; i < l.rows(); ++i) {
    const double pivot = l(i, i) * l(i, i);
    if (!(pivot > 1e-12 * max_diag)) throw NotSpd();
  }
  return LowerTriangular(std::move(l));
}

inline SpdMatrix invert_spd(const SpdMatrix& m) {
  const LowerTriangular l = cholesky(m);
  const auto p = m.dim();
  // Solve L·Lᵀ·X = I column by column.
  Matrix x = Matrix::Identity(p, p);
  l.matrix().triangularView<Eigen::Lower>().solveInPlace(x);
  l.matrix().transpose().triangularView<Eigen::Upper>().solveInPlace(x);
  x = 0.5 * (x + x.transpose()).eval();
  return SpdMatrix(std::move(x));
}

inline double mahalanobis_sq(const Vector& x, const Vector& mean, const SpdMatrix& inv_cov) {
  if (x.size() != mean.size() || x.size() != inv_cov.dim()) {
    throw DimensionError("mahalanobis_sq: dimension mismatch");
  }
  const Vector d = x - mean;
  return std::max(0.0, d.dot(inv_cov.matrix() * d));
}

}  // namespace morderstats
