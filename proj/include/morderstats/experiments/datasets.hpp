#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include "morderstats/error.hpp"
#include "morderstats/experiments/rng.hpp"
#include "morderstats/linalg.hpp"

namespace morderstats {

enum class CovKind { A, B, MixAB };

inline std::string_view to_string(CovKind k) {
  switch (k) {
    case CovKind::A:
      return "A";
    case CovKind::B:
      return "B";
    case CovKind::MixAB:
      return "mix";
  }
  return "unknown";
}

inline CovKind parse_cov(std::string_view s) {
  if (s == "A") return CovKind::A;
  if (s == "B") return CovKind::B;
  if (s == "mix" || s == "MixAB" || s == "AB") return CovKind::MixAB;
  throw ConfigError("unknown covariance kind '" + std::string(s) + "'");
}

struct CovarianceSpec {
  CovKind kind = CovKind::A;
  int p = 2;

  void validate() const {
    if (p != 2 && p != 3) throw ConfigError("covariance structures are defined for p = 2 and p = 3");
  }
};

/// Unit variances, all correlations 0.6.
inline SpdMatrix covariance_a(int p) {
  Matrix m = Matrix::Constant(p, p, 0.6);
  m.diagonal().setOnes();
  return SpdMatrix(std::move(m));
}

/// Variances 5, all covariances -2.
inline SpdMatrix covariance_b(int p) {
  Matrix m = Matrix::Constant(p, p, -2.0);
  m.diagonal().setConstant(5.0);
  return SpdMatrix(std::move(m));
}

/// `count` draws of N(0, cov): each point is L·z with L = cholesky(cov).
template <typename Urbg>
PointSet sample_mvn(std::size_t count, const SpdMatrix& cov, Urbg& rng) {
  const LowerTriangular l = cholesky(cov);
  const int p = cov.dim();
  std::normal_distribution<double> normal(0.0, 1.0);
  PointSet out(static_cast<Eigen::Index>(count), p);
  Vector z(p);
  for (std::size_t i = 0; i < count; ++i) {
    for (int j = 0; j < p; ++j) z(j) = normal(rng);
    out.row(static_cast<Eigen::Index>(i)) = (l * z).transpose();
  }
  return out;
}

/// Standard-normal draws for one dataset. They depend on (base_seed, n, p,
/// replicate, role) only, never on the covariance kind, so datasets that
/// differ only in covariance share their underlying randomness.
inline PointSet standard_draws(std::uint64_t base_seed, std::size_t n, int p, std::size_t replicate, int role) {
  SplitMix64 rng(stream_seed(base_seed, n, static_cast<std::uint64_t>(p), replicate, static_cast<std::uint64_t>(role)));
  return sample_mvn(n, SpdMatrix::identity(p), rng);
}

/// Dataset `role` (train = 0, test j = j+1) of replicate `replicate`.
/// MixAB maps the first n/2 draws through chol(A) and the rest through chol(B).
inline PointSet make_dataset(const CovarianceSpec& spec, std::size_t n, std::size_t replicate, int role,
                             std::uint64_t base_seed) {
  spec.validate();
  if (spec.kind == CovKind::MixAB && n % 2 != 0) throw ConfigError("the A/B mixture needs an even n");
  const PointSet z = standard_draws(base_seed, n, spec.p, replicate, role);
  const Matrix la = cholesky(covariance_a(spec.p)).matrix();
  const Matrix lb = cholesky(covariance_b(spec.p)).matrix();
  PointSet out(z.rows(), z.cols());
  const Eigen::Index half = static_cast<Eigen::Index>(n / 2);
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    const bool use_b = spec.kind == CovKind::B || (spec.kind == CovKind::MixAB && i >= half);
    const Matrix& l = use_b ? lb : la;
    out.row(i) = (l.triangularView<Eigen::Lower>() * z.row(i).transpose()).transpose();
  }
  return out;
}

}  // namespace morderstats
