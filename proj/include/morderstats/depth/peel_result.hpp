#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "morderstats/error.hpp"
#include "morderstats/geometry/region.hpp"

namespace morderstats {

enum class Algorithm { halfspace, direct, mahal };

inline std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::halfspace:
      return "halfspace";
    case Algorithm::direct:
      return "direct";
    case Algorithm::mahal:
      return "mahal";
  }
  return "unknown";
}

inline Algorithm parse_algorithm(std::string_view s) {
  if (s == "halfspace") return Algorithm::halfspace;
  if (s == "direct") return Algorithm::direct;
  if (s == "mahal") return Algorithm::mahal;
  throw ConfigError("unknown algorithm '" + std::string(s) + "'");
}

enum class PeelStatus {
  ok,
  /// The active set fell below p+1 affinely independent points before the
  /// threshold was reached; the tail regions are flat.
  insufficient_points,
  /// No plane index above the last one exists; peeling stopped early.
  index_exhausted,
};

inline std::string_view to_string(PeelStatus s) {
  switch (s) {
    case PeelStatus::ok:
      return "ok";
    case PeelStatus::insufficient_points:
      return "insufficient_points";
    case PeelStatus::index_exhausted:
      return "index_exhausted";
  }
  return "unknown";
}

struct Peel {
  std::size_t k = 0;
  ConvexRegion region;
  std::size_t points_inside = 0;
  double alpha_hat = 0.0;
};

struct PeelResult {
  Algorithm algorithm = Algorithm::halfspace;
  ConvexRegion chosen;
  double alpha_hat = 0.0;
  std::size_t chosen_peel = 0;  // position of `chosen` in `peels`
  std::size_t n = 0;
  std::vector<Peel> peels;
  std::vector<std::size_t> skipped_k;
  PeelStatus status = PeelStatus::ok;
};

/// Index of the candidate whose realised alpha is closest to `alpha`. Ties
/// (within 1e-12) go to the later, i.e. deeper, candidate.
inline std::size_t select_output_hull(std::span<const double> alpha_hats, double alpha) {
  if (alpha_hats.empty()) throw InternalError("select_output_hull: no candidates");
  std::size_t best = 0;
  double best_gap = std::abs(alpha_hats[0] - alpha);
  for (std::size_t i = 1; i < alpha_hats.size(); ++i) {
    const double gap = std::abs(alpha_hats[i] - alpha);
    if (gap <= best_gap + 1e-12) {
      best = i;
      best_gap = std::min(gap, best_gap);
    }
  }
  return best;
}

namespace detail {

inline void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
}

inline void check_input(const PointSet& points) {
  const int p = dimension(points);
  if (p < 2) throw DimensionError("dimension must be at least 2");
  if (points.rows() < p + 1) {
    throw InsufficientPoints("need at least p+1 = " + std::to_string(p + 1) + " points, have " +
                             std::to_string(points.rows()));
  }
  if (!points.allFinite()) throw DegenerateData("non-finite coordinate");
}

inline Peel make_peel(std::size_t k, ConvexRegion region, const PointSet& points, const Tolerance& tol) {
  Peel peel;
  peel.k = k;
  peel.points_inside = count_inside(region, points, tol);
  peel.alpha_hat = 1.0 - static_cast<double>(peel.points_inside) / static_cast<double>(points.rows());
  peel.region = std::move(region);
  return peel;
}

/// Chooses among peels[first..] and fills chosen/alpha_hat.
inline void choose(PeelResult& result, std::size_t first, double alpha) {
  std::vector<double> hats;
  for (std::size_t i = first; i < result.peels.size(); ++i) hats.push_back(result.peels[i].alpha_hat);
  result.chosen_peel = first + select_output_hull(hats, alpha);
  result.chosen = result.peels[result.chosen_peel].region;
  result.alpha_hat = result.peels[result.chosen_peel].alpha_hat;
}

}  // namespace detail

}  // namespace morderstats
