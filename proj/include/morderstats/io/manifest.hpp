#pragma once

// manifest.json for an experiment run: configuration echo, software version,
// seed, wall-clock timestamps, per-cell status and the metric definitions.

#include <chrono>
#include <ctime>
#include <string>
#include <vector>

#include "morderstats/experiments/runner.hpp"
#include "morderstats/io/region_json.hpp"
#include "morderstats/version.hpp"

namespace morderstats::io {

/// ISO-8601 UTC, second resolution.
inline std::string utc_timestamp(std::chrono::system_clock::time_point t) {
  const std::time_t tt = std::chrono::system_clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline std::string cell_status(const CellSummary& c) { return c.ok ? "ok" : "failed(" + c.failure + ")"; }

inline Json metric_definitions() {
  return {
      {"error", "per test set: |inside/n_test - (1 - alpha_hat)|"},
      {"error_mu", "mean over all replicate x test-set errors"},
      {"error_sigma", "population standard deviation over all replicate x test-set errors"},
      {"error_min", "minimum over all replicate x test-set errors"},
      {"error_max", "maximum over all replicate x test-set errors"},
      {"alpha_hat_mu", "mean over replicates of the realised alpha (fraction of training points outside)"},
      {"alpha_hat_sigma", "population standard deviation over replicates of the realised alpha"},
      {"too_many_mu", "mean over replicates of the fraction of test sets with inside/n_test > 1 - alpha_hat"},
      {"too_many_sigma", "population standard deviation over replicates of that fraction"},
      {"too_few_mu", "mean over replicates of the fraction of test sets with inside/n_test < 1 - alpha_hat"},
      {"too_few_sigma", "population standard deviation over replicates of that fraction"},
      {"volume_mu", "mean over replicates of the chosen region's area (p=2) or volume"},
      {"volume_sigma", "population standard deviation over replicates of the volume"},
      {"construction_seconds", "wall-clock construction time summed over replicates (monotonic clock); "
                               "written only with --runtime-table"},
  };
}

struct ManifestInput {
  std::vector<double> alphas;
  ExperimentConfig config;  // alpha field ignored; see `alphas`
  bool runtime_table = false;
  std::chrono::system_clock::time_point started;
  std::chrono::system_clock::time_point finished;
};

inline Json manifest_json(const ManifestInput& in, const std::vector<CellSummary>& cells) {
  const ExperimentConfig& c = in.config;
  Json algorithms = Json::array();
  for (Algorithm a : c.algorithms) algorithms.push_back(std::string(to_string(a)));
  Json doc;
  doc["software"] = {{"name", "morderstats"}, {"version", version}};
  doc["seed"] = c.seed;
  doc["started_at"] = utc_timestamp(in.started);
  doc["finished_at"] = utc_timestamp(in.finished);
  doc["config"] = {{"n", c.n},
                   {"p", c.p},
                   {"cov", std::string(to_string(c.cov.kind))},
                   {"alphas", in.alphas},
                   {"algorithms", algorithms},
                   {"replicates", c.replicates},
                   {"test_sets", c.test_sets},
                   {"seed", c.seed},
                   {"parallel", c.workers},
                   {"runtime_table", in.runtime_table},
                   {"tolerance", {{"eps_abs", c.tol.eps_abs}, {"eps_rel", c.tol.eps_rel}}}};
  Json list = Json::array();
  for (const CellSummary& cell : cells) {
    list.push_back({{"algorithm", std::string(to_string(cell.algorithm))},
                    {"alpha", cell.alpha},
                    {"cov", std::string(to_string(cell.cov))},
                    {"n", cell.n},
                    {"p", cell.p},
                    {"status", cell_status(cell)}});
  }
  doc["cells"] = std::move(list);
  doc["metrics"] = metric_definitions();
  doc["rng"] = "SplitMix64 streams; stream seed = mix-fold of (seed, n, p, replicate, role), role train = 0, test j = j + 1";
  return doc;
}

}  // namespace morderstats::io
