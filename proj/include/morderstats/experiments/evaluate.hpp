#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "morderstats/error.hpp"
#include "morderstats/geometry/region.hpp"

namespace morderstats {

struct RegionEvaluation {
  std::vector<double> errors;  // one per test set
  std::size_t too_many = 0;
  std::size_t too_few = 0;
};

/// Skill of a region on held-out sets: for each set the fraction f inside is
/// compared with the nominal coverage 1 - alpha_hat. Exact agreement (within
/// 1e-12) counts as neither too many nor too few.
inline RegionEvaluation evaluate_region(const ConvexRegion& region, double alpha_hat, std::span<const PointSet> tests,
                                        const Tolerance& tol = {}) {
  if (tests.empty()) throw ConfigError("evaluate_region needs at least one test set");
  const double nominal = 1.0 - alpha_hat;
  RegionEvaluation out;
  out.errors.reserve(tests.size());
  for (const PointSet& t : tests) {
    if (t.rows() == 0) throw EmptyData();
    const double f = static_cast<double>(count_inside(region, t, tol)) / static_cast<double>(t.rows());
    const double diff = f - nominal;
    if (diff > 1e-12) {
      ++out.too_many;
    } else if (diff < -1e-12) {
      ++out.too_few;
    }
    out.errors.push_back(std::abs(diff) <= 1e-12 ? 0.0 : std::abs(diff));
  }
  return out;
}

}  // namespace morderstats
