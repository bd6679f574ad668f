#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <string>
#include <thread>
#include <vector>

#include "morderstats/error.hpp"
#include "morderstats/geometry/hyperplane.hpp"
#include "morderstats/linalg.hpp"

namespace morderstats {

/// Point ids currently taking part in peeling, plus the iteration counter.
struct ActiveSet {
  std::vector<std::size_t> ids;
  std::size_t k = 0;

  static ActiveSet all(std::size_t n) {
    ActiveSet a;
    a.ids.resize(n);
    for (std::size_t i = 0; i < n; ++i) a.ids[i] = i;
    return a;
  }
};

/// A plane through p active points, indexed by the smaller of its two
/// strict side counts. majority_side is +1 when the side normal·x > offset
/// holds more points, -1 for the opposite side and 0 on a tie.
struct IndexedHyperplane {
  Hyperplane plane;
  std::size_t index = 0;
  int majority_side = 0;
  std::vector<std::size_t> through;  // the p defining point ids
};

namespace detail {

template <int P>
void enumerate_from_first(const PointSet& active_pts, const std::vector<std::size_t>& ids, std::size_t first,
                          const Tolerance& tol, std::vector<IndexedHyperplane>& out) {
  const Eigen::Index p = active_pts.cols();
  const Eigen::Index m = active_pts.rows();
  using Square = Eigen::Matrix<double, P, P>;
  Square rows(p, p);
  std::vector<Eigen::Index> combo(static_cast<std::size_t>(p));
  combo[0] = static_cast<Eigen::Index>(first);
  rows.row(0) = active_pts.row(combo[0]);

  // Odometer over the remaining p-1 positions, strictly increasing.
  auto emit = [&]() {
    Hyperplane h;
    try {
      h = hyperplane_through(rows);
    } catch (const DegenerateSimplex&) {
      return;
    }
    const double band = tol.band(h.offset);
    std::size_t below = 0, above = 0;
    const double* data = active_pts.data();
    const double* n = h.normal.data();
    for (Eigen::Index r = 0; r < m; ++r) {
      const double* x = data + r * p;
      double s = 0.0;
      for (Eigen::Index c = 0; c < p; ++c) s += n[c] * x[c];
      s -= h.offset;
      if (s > band) {
        ++above;
      } else if (s < -band) {
        ++below;
      }
    }
    IndexedHyperplane ih;
    ih.index = std::min(below, above);
    ih.majority_side = above > below ? 1 : (below > above ? -1 : 0);
    ih.through.resize(static_cast<std::size_t>(p));
    for (Eigen::Index i = 0; i < p; ++i) ih.through[static_cast<std::size_t>(i)] = ids[static_cast<std::size_t>(combo[static_cast<std::size_t>(i)])];
    ih.plane = std::move(h);
    out.push_back(std::move(ih));
  };

  if (p == 1) return;
  std::size_t depth = 1;
  combo[1] = combo[0];
  while (true) {
    ++combo[depth];
    if (combo[depth] > m - (p - static_cast<Eigen::Index>(depth))) {
      if (--depth == 0) break;
      continue;
    }
    rows.row(static_cast<Eigen::Index>(depth)) = active_pts.row(combo[depth]);
    if (depth + 1 == static_cast<std::size_t>(p)) {
      emit();
    } else {
      ++depth;
      combo[depth] = combo[depth - 1];
    }
  }
}

template <int P>
std::vector<IndexedHyperplane> enumerate_impl(const PointSet& active_pts, const std::vector<std::size_t>& ids,
                                              const Tolerance& tol, unsigned workers) {
  const std::size_t m = ids.size();
  std::vector<std::vector<IndexedHyperplane>> by_first(m);
  std::atomic<std::size_t> next{0};
  auto run = [&]() {
    for (std::size_t i = next++; i < m; i = next++) enumerate_from_first<P>(active_pts, ids, i, tol, by_first[i]);
  };
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(m, 1))));
  if (workers == 1) {
    run();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
  }
  std::size_t total = 0;
  for (const auto& v : by_first) total += v.size();
  std::vector<IndexedHyperplane> out;
  out.reserve(total);
  for (auto& v : by_first) {
    for (auto& h : v) out.push_back(std::move(h));
  }
  return out;
}

}  // namespace detail

/// Every plane through p affinely independent active points, in
/// lexicographic order of the (active-position) combinations. Side counts
/// are taken over the active points; points on the plane count for neither
/// side. With workers > 1 combinations are split by their first element;
/// the output is identical to the serial one.
inline std::vector<IndexedHyperplane> enumerate_indexed_hyperplanes(const PointSet& points, const ActiveSet& active,
                                                                    const Tolerance& tol = {}, unsigned workers = 1) {
  const int p = dimension(points);
  if (p < 2) throw DimensionError("enumerate_indexed_hyperplanes needs dimension >= 2");
  if (active.ids.size() < static_cast<std::size_t>(p)) {
    throw InsufficientPoints("need at least p=" + std::to_string(p) + " active points, have " +
                             std::to_string(active.ids.size()));
  }
  const PointSet active_pts = subset(points, active.ids);
  switch (p) {
    case 2:
      return detail::enumerate_impl<2>(active_pts, active.ids, tol, workers);
    case 3:
      return detail::enumerate_impl<3>(active_pts, active.ids, tol, workers);
    default:
      return detail::enumerate_impl<Eigen::Dynamic>(active_pts, active.ids, tol, workers);
  }
}

/// The closed halfspace(s) kept for a plane: its majority side, or both
/// sides on a tie.
template <typename OutputIt>
OutputIt majority_halfspaces(const IndexedHyperplane& h, OutputIt out) {
  if (h.majority_side >= 0) *out++ = h.plane.flipped();
  if (h.majority_side <= 0) *out++ = h.plane;
  return out;
}

}  // namespace morderstats
