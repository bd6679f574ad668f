// morderstats command-line front end.
//
//   morderstats region --input pts.csv --algorithm halfspace --alpha 0.1 --out region.json [--svg peels.svg]
//   morderstats experiment --n 100 --p 2 --cov A --alpha 0.1 --alpha 0.5 --out-dir results/
//
// Exit codes: 0 ok, 1 internal error, 2 bad input or flags, 3 degenerate
// geometry / covariance, 4 dimension below 2, 5 every experiment cell failed.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "morderstats/depth/direct_peel.hpp"
#include "morderstats/depth/halfspace_peel.hpp"
#include "morderstats/depth/mahal_region.hpp"
#include "morderstats/error.hpp"
#include "morderstats/experiments/runner.hpp"
#include "morderstats/io/csv.hpp"
#include "morderstats/io/manifest.hpp"
#include "morderstats/io/region_json.hpp"
#include "morderstats/io/svg.hpp"
#include "morderstats/io/tables.hpp"
#include "morderstats/version.hpp"

namespace fs = std::filesystem;
using namespace morderstats;

namespace {

enum Exit : int { kOk = 0, kInternal = 1, kUsage = 2, kGeometry = 3, kDimension = 4, kAllFailed = 5 };

struct RegionArgs {
  std::string input;
  std::string algorithm = "halfspace";
  double alpha = 0.1;
  std::string out;
  double tol = -1.0;
  std::string svg;
  bool json = false;
};

struct ExperimentArgs {
  std::size_t n = 100;
  int p = 2;
  std::string cov = "A";
  std::vector<double> alphas;
  std::vector<std::string> algorithms{"mahal", "direct", "halfspace"};
  std::size_t replicates = 10;
  std::size_t tests = 100;
  std::uint64_t seed = 0;
  std::string out_dir;
  unsigned parallel = 1;
  bool runtime_table = false;
  bool dump = false;
};

Tolerance tolerance_from(double tol) {
  Tolerance t;
  if (tol >= 0.0) t.eps_abs = t.eps_rel = tol;
  return t;
}

/// Maps library errors onto the exit-code taxonomy.
int report(const std::exception& e) {
  std::cerr << "morderstats: " << e.what() << '\n';
  if (dynamic_cast<const CsvError*>(&e) || dynamic_cast<const ConfigError*>(&e)) return kUsage;
  if (dynamic_cast<const DimensionError*>(&e)) return kDimension;
  if (dynamic_cast<const DegenerateHull*>(&e) || dynamic_cast<const NotSpd*>(&e) ||
      dynamic_cast<const DegenerateSimplex*>(&e) || dynamic_cast<const DegenerateData*>(&e) ||
      dynamic_cast<const UnboundedRegion*>(&e) || dynamic_cast<const InsufficientPoints*>(&e) ||
      dynamic_cast<const BadInteriorPoint*>(&e) || dynamic_cast<const EmptyData*>(&e)) {
    return kGeometry;
  }
  return kInternal;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  return out;
}

int run_region(const RegionArgs& args) {
  const io::CsvTable table = io::read_csv_file(args.input);
  const PointSet& points = table.points;
  if (dimension(points) < 2) {
    std::cerr << "morderstats: data has dimension " << dimension(points) << "; at least 2 is required\n";
    return kDimension;
  }
  if (!args.svg.empty() && dimension(points) != 2) throw ConfigError("--svg needs two-dimensional data");
  const Algorithm algorithm = parse_algorithm(args.algorithm);
  const Tolerance tol = tolerance_from(args.tol);
  tol.validate();

  convex_hull(points, tol);  // rejects flat input up front, whatever the algorithm
  PeelResult result;
  switch (algorithm) {
    case Algorithm::halfspace:
      result = halfspace_peel(points, args.alpha, tol);
      break;
    case Algorithm::direct:
      result = direct_peel(points, args.alpha, tol);
      break;
    case Algorithm::mahal:
      result = mahal_region(points, args.alpha, tol);
      break;
  }

  const io::Json doc = io::peel_result_json(result, args.alpha);
  open_output(args.out) << doc.dump(2) << '\n';
  if (!args.svg.empty()) {
    std::ofstream svg = open_output(args.svg);
    io::write_svg(svg, points, result);
  }
  if (args.json) {
    std::cout << doc.dump(2) << '\n';
  } else {
    std::cout << to_string(algorithm) << ": alpha_hat=" << result.alpha_hat << " peels=" << result.peels.size()
              << " vertices=" << result.chosen.vertices.size() << " status=" << to_string(result.status) << '\n';
  }
  if (result.status != PeelStatus::ok) std::cerr << "morderstats: warning: peeling status " << to_string(result.status) << '\n';
  return kOk;
}

void dump_dataset(const fs::path& dir, std::size_t replicate, int role, const PointSet& data) {
  const std::string name = role == static_cast<int>(DatasetRole::train)
                               ? "replicate" + std::to_string(replicate) + "_train.csv"
                               : "replicate" + std::to_string(replicate) + "_test" + std::to_string(role - 1) + ".csv";
  std::ofstream out = open_output(dir / name);
  io::write_csv(out, data);
}

int run_experiment_cmd(const ExperimentArgs& args) {
  if (args.p < 2) {
    std::cerr << "morderstats: p must be at least 2\n";
    return kDimension;
  }
  if (args.alphas.empty()) throw ConfigError("at least one --alpha is required");
  if (args.runtime_table && args.parallel > 1) throw ConfigError("--runtime-table times construction serially; drop --parallel");

  ExperimentConfig base;
  base.n = args.n;
  base.p = args.p;
  base.cov = CovarianceSpec{parse_cov(args.cov), args.p};
  base.replicates = args.replicates;
  base.test_sets = args.tests;
  base.seed = args.seed;
  base.workers = args.parallel;
  base.algorithms.clear();
  for (const std::string& a : args.algorithms) base.algorithms.push_back(parse_algorithm(a));
  std::vector<ExperimentConfig> configs;
  for (double alpha : args.alphas) {
    ExperimentConfig c = base;
    c.alpha = alpha;
    c.validate();  // all flag errors surface before any work starts
    configs.push_back(std::move(c));
  }

  const fs::path out_dir = args.out_dir;
  fs::create_directories(out_dir);
  if (args.dump) {
    fs::create_directories(out_dir / "datasets");
    // Datasets do not depend on alpha; dump them once.
    configs.front().on_dataset = [dir = out_dir / "datasets"](std::size_t r, int role, const PointSet& data) {
      dump_dataset(dir, r, role, data);
    };
  }

  const auto started = std::chrono::system_clock::now();
  std::vector<CellSummary> cells;
  for (const ExperimentConfig& c : configs) {
    std::cerr << "morderstats: alpha=" << c.alpha << " n=" << c.n << " p=" << c.p << " cov=" << to_string(c.cov.kind)
              << " (" << c.replicates << " x " << c.test_sets << ")\n";
    ExperimentSummary summary = run_experiment(c);
    for (CellSummary& cell : summary.cells) {
      if (!cell.ok) std::cerr << "morderstats: cell " << to_string(cell.algorithm) << " failed: " << cell.failure << '\n';
      cells.push_back(std::move(cell));
    }
  }
  const auto finished = std::chrono::system_clock::now();

  {
    std::ofstream out = open_output(out_dir / "summary.csv");
    io::write_summary_csv(out, cells, args.runtime_table);
  }
  if (args.runtime_table) {
    std::ofstream out = open_output(out_dir / "runtime.csv");
    io::write_runtime_csv(out, cells);
  }
  io::ManifestInput manifest{args.alphas, base, args.runtime_table, started, finished};
  open_output(out_dir / "manifest.json") << io::manifest_json(manifest, cells).dump(2) << '\n';

  const bool any_ok = std::any_of(cells.begin(), cells.end(), [](const CellSummary& c) { return c.ok; });
  return any_ok ? kOk : kAllFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multivariate order statistics: depth-peeling regions and their evaluation", "morderstats"};
  app.set_version_flag("--version", std::string(morderstats::version));
  app.require_subcommand(1);

  RegionArgs region;
  CLI::App* region_cmd = app.add_subcommand("region", "Compute an alpha region for a CSV point set");
  region_cmd->add_option("--input", region.input, "CSV file, one point per row")->required()->check(CLI::ExistingFile);
  region_cmd->add_option("--algorithm", region.algorithm, "halfspace, direct or mahal")
      ->check(CLI::IsMember({"halfspace", "direct", "mahal"}))
      ->capture_default_str();
  region_cmd->add_option("--alpha", region.alpha, "Target fraction of points outside the region")
      ->required()
      ->check(CLI::Range(0.0, 1.0));
  region_cmd->add_option("--out", region.out, "Region JSON output path")->required();
  region_cmd->add_option("--tol", region.tol, "Geometric tolerance (absolute and relative)")->check(CLI::PositiveNumber);
  region_cmd->add_option("--svg", region.svg, "Write an SVG of all peels (p = 2 only)");
  region_cmd->add_flag("--json", region.json, "Print the region JSON to stdout");

  ExperimentArgs exp;
  if (const char* env = std::getenv("MORDERSTATS_SEED")) {
    try {
      exp.seed = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "morderstats: MORDERSTATS_SEED is not an unsigned integer: '" << env << "'\n";
      return kUsage;
    }
  }
  CLI::App* exp_cmd = app.add_subcommand("experiment", "Run the simulation grid and write summary tables");
  exp_cmd->add_option("--n", exp.n, "Points per data set")->required()->check(CLI::PositiveNumber);
  exp_cmd->add_option("--p", exp.p, "Dimension (2 or 3)")->capture_default_str();
  exp_cmd->add_option("--cov", exp.cov, "Covariance structure")
      ->check(CLI::IsMember({"A", "B", "mix"}))
      ->capture_default_str();
  exp_cmd->add_option("--alpha", exp.alphas, "Target alpha; repeat for several")->required()->check(CLI::Range(0.0, 1.0));
  exp_cmd->add_option("--algorithms", exp.algorithms, "Comma-separated subset of mahal,direct,halfspace")
      ->delimiter(',')
      ->check(CLI::IsMember({"halfspace", "direct", "mahal"}))
      ->capture_default_str();
  exp_cmd->add_option("--replicates", exp.replicates, "Training data sets")->capture_default_str()->check(CLI::PositiveNumber);
  exp_cmd->add_option("--tests", exp.tests, "Test sets per replicate")->capture_default_str()->check(CLI::PositiveNumber);
  exp_cmd->add_option("--seed", exp.seed, "Base seed (default: $MORDERSTATS_SEED or 0)");
  exp_cmd->add_option("--out-dir", exp.out_dir, "Output directory")->required();
  exp_cmd->add_option("--parallel", exp.parallel, "Replicate workers")->capture_default_str()->check(CLI::PositiveNumber);
  exp_cmd->add_flag("--runtime-table", exp.runtime_table, "Time construction and write runtime.csv");
  exp_cmd->add_flag("--dump", exp.dump, "Persist every generated data set under <out-dir>/datasets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*region_cmd) return run_region(region);
    return run_experiment_cmd(exp);
  } catch (const std::exception& e) {
    return report(e);
  }
}
