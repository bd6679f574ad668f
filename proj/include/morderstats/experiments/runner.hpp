#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <limits>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

#include "morderstats/depth/direct_peel.hpp"
#include "morderstats/depth/halfspace_peel.hpp"
#include "morderstats/depth/mahal_region.hpp"
#include "morderstats/error.hpp"
#include "morderstats/experiments/datasets.hpp"
#include "morderstats/experiments/evaluate.hpp"

namespace morderstats {

struct ExperimentConfig {
  std::size_t n = 100;
  int p = 2;
  double alpha = 0.1;
  CovarianceSpec cov;
  std::size_t replicates = 10;
  std::size_t test_sets = 100;
  std::uint64_t seed = 0;
  std::vector<Algorithm> algorithms{Algorithm::mahal, Algorithm::direct, Algorithm::halfspace};
  /// Replicates run concurrently on this many workers.
  unsigned workers = 1;
  Tolerance tol;
  /// Called with (replicate, role, data) for every generated dataset.
  std::function<void(std::size_t, int, const PointSet&)> on_dataset;

  void validate() const {
    if (replicates < 1) throw ConfigError("replicates must be >= 1");
    if (test_sets < 1) throw ConfigError("test_sets must be >= 1");
    if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
    if (cov.p != p) throw ConfigError("covariance dimension differs from p");
    cov.validate();
    if (cov.kind == CovKind::MixAB && n % 2 != 0) throw ConfigError("the A/B mixture needs an even n");
    if (n < static_cast<std::size_t>(p) + 1) throw ConfigError("n must be at least p+1");
    if (algorithms.empty()) throw ConfigError("no algorithms requested");
    tol.validate();
  }
};

/// One (algorithm, alpha, cov, n) cell. Over-replicate statistics use the
/// population standard deviation.
struct CellSummary {
  Algorithm algorithm = Algorithm::halfspace;
  double alpha = 0.0;
  CovKind cov = CovKind::A;
  std::size_t n = 0;
  int p = 0;
  bool ok = true;
  std::string failure;

  /// Over all replicate × test errors.
  double error_mu = 0.0;
  double error_sigma = 0.0;
  double error_min = 0.0;
  double error_max = 0.0;
  /// Over replicates.
  double alpha_hat_mu = 0.0;
  double alpha_hat_sigma = 0.0;
  double too_many_mu = 0.0;
  double too_many_sigma = 0.0;
  double too_few_mu = 0.0;
  double too_few_sigma = 0.0;
  double volume_mu = 0.0;
  double volume_sigma = 0.0;
  /// Summed over replicates, construction only.
  double construction_seconds = 0.0;

  std::vector<double> replicate_alpha_hat;
  std::vector<std::size_t> replicate_points_inside;
  std::vector<double> replicate_volume;
  std::vector<double> replicate_seconds;
  std::vector<double> errors;  // replicate-major
  std::size_t too_many_total = 0;
  std::size_t too_few_total = 0;
};

struct ExperimentSummary {
  ExperimentConfig config;
  std::vector<CellSummary> cells;  // in config.algorithms order
};

namespace detail {

struct Moments {
  double mean = 0.0;
  double sd = 0.0;
};

template <typename Range>
Moments moments(const Range& values) {
  Moments m;
  const auto count = static_cast<double>(std::size(values));
  if (count == 0) return m;
  const double first = *std::begin(values);
  if (std::all_of(std::begin(values), std::end(values), [&](double v) { return v == first; })) {
    m.mean = first;
    return m;
  }
  for (double v : values) m.mean += v;
  m.mean /= count;
  double ss = 0.0;
  for (double v : values) ss += (v - m.mean) * (v - m.mean);
  m.sd = std::sqrt(ss / count);
  return m;
}

inline PeelResult run_algorithm(Algorithm a, const PointSet& train, double alpha, const Tolerance& tol) {
  switch (a) {
    case Algorithm::halfspace:
      return halfspace_peel(train, alpha, tol);
    case Algorithm::direct:
      return direct_peel(train, alpha, tol);
    case Algorithm::mahal:
      return mahal_region(train, alpha, tol);
  }
  throw InternalError("unknown algorithm");
}

struct ReplicateOutcome {
  bool ok = false;
  std::string failure;
  double alpha_hat = 0.0;
  std::size_t points_inside = 0;
  double volume = 0.0;
  double seconds = 0.0;
  RegionEvaluation evaluation;
};

}  // namespace detail

inline ExperimentSummary run_experiment(const ExperimentConfig& config) {
  config.validate();
  const std::size_t reps = config.replicates;
  const std::size_t algos = config.algorithms.size();
  std::vector<std::vector<detail::ReplicateOutcome>> outcomes(algos, std::vector<detail::ReplicateOutcome>(reps));

  auto run_replicate = [&](std::size_t r) {
    const PointSet train = make_dataset(config.cov, config.n, r, static_cast<int>(DatasetRole::train), config.seed);
    std::vector<PointSet> tests;
    tests.reserve(config.test_sets);
    for (std::size_t j = 0; j < config.test_sets; ++j) {
      tests.push_back(make_dataset(config.cov, config.n, r, test_role(static_cast<int>(j)), config.seed));
    }
    if (config.on_dataset) {
      config.on_dataset(r, static_cast<int>(DatasetRole::train), train);
      for (std::size_t j = 0; j < tests.size(); ++j) config.on_dataset(r, test_role(static_cast<int>(j)), tests[j]);
    }
    for (std::size_t a = 0; a < algos; ++a) {
      detail::ReplicateOutcome& out = outcomes[a][r];
      try {
        const auto start = std::chrono::steady_clock::now();
        const PeelResult result = detail::run_algorithm(config.algorithms[a], train, config.alpha, config.tol);
        const auto stop = std::chrono::steady_clock::now();
        out.seconds = std::chrono::duration<double>(stop - start).count();
        out.alpha_hat = result.alpha_hat;
        out.points_inside = result.peels[result.chosen_peel].points_inside;
        out.volume = volume(result.chosen);
        out.evaluation = evaluate_region(result.chosen, result.alpha_hat, tests, config.tol);
        out.ok = true;
      } catch (const std::exception& e) {
        out.failure = e.what();
      }
    }
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(config.workers, static_cast<unsigned>(reps)));
  if (workers == 1) {
    for (std::size_t r = 0; r < reps; ++r) run_replicate(r);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t r = next++; r < reps; r = next++) run_replicate(r);
      });
    }
  }

  ExperimentSummary summary;
  summary.config = config;
  summary.config.on_dataset = nullptr;
  for (std::size_t a = 0; a < algos; ++a) {
    CellSummary cell;
    cell.algorithm = config.algorithms[a];
    cell.alpha = config.alpha;
    cell.cov = config.cov.kind;
    cell.n = config.n;
    cell.p = config.p;
    std::vector<double> too_many_rate, too_few_rate;
    for (std::size_t r = 0; r < reps; ++r) {
      const detail::ReplicateOutcome& out = outcomes[a][r];
      if (!out.ok) {
        cell.ok = false;
        if (cell.failure.empty()) cell.failure = "replicate " + std::to_string(r) + ": " + out.failure;
        continue;
      }
      cell.replicate_alpha_hat.push_back(out.alpha_hat);
      cell.replicate_points_inside.push_back(out.points_inside);
      cell.replicate_volume.push_back(out.volume);
      cell.replicate_seconds.push_back(out.seconds);
      cell.construction_seconds += out.seconds;
      const auto tests = static_cast<double>(out.evaluation.errors.size());
      too_many_rate.push_back(static_cast<double>(out.evaluation.too_many) / tests);
      too_few_rate.push_back(static_cast<double>(out.evaluation.too_few) / tests);
      cell.too_many_total += out.evaluation.too_many;
      cell.too_few_total += out.evaluation.too_few;
      cell.errors.insert(cell.errors.end(), out.evaluation.errors.begin(), out.evaluation.errors.end());
    }
    if (cell.ok) {
      const auto err = detail::moments(cell.errors);
      cell.error_mu = err.mean;
      cell.error_sigma = err.sd;
      cell.error_min = *std::min_element(cell.errors.begin(), cell.errors.end());
      cell.error_max = *std::max_element(cell.errors.begin(), cell.errors.end());
      const auto ah = detail::moments(cell.replicate_alpha_hat);
      cell.alpha_hat_mu = ah.mean;
      cell.alpha_hat_sigma = ah.sd;
      const auto tm = detail::moments(too_many_rate);
      cell.too_many_mu = tm.mean;
      cell.too_many_sigma = tm.sd;
      const auto tf = detail::moments(too_few_rate);
      cell.too_few_mu = tf.mean;
      cell.too_few_sigma = tf.sd;
      const auto vol = detail::moments(cell.replicate_volume);
      cell.volume_mu = vol.mean;
      cell.volume_sigma = vol.sd;
    }
    summary.cells.push_back(std::move(cell));
  }
  return summary;
}

}  // namespace morderstats
