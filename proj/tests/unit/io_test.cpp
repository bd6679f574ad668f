#include <gtest/gtest.h>

#include <regex>
#include <sstream>

#include "morderstats/depth/direct_peel.hpp"
#include "morderstats/depth/halfspace_peel.hpp"
#include "morderstats/io/csv.hpp"
#include "morderstats/io/manifest.hpp"
#include "morderstats/io/region_json.hpp"
#include "morderstats/io/svg.hpp"
#include "morderstats/io/tables.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace morderstats;

namespace {

io::CsvTable parse(const std::string& text) {
  std::istringstream in(text);
  return io::read_csv(in);
}

std::size_t count_of(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST(ReadCsv, HeaderDetected) {
  const io::CsvTable t = parse("x,y\n0,0\n1,0\n\n1,1\n");
  EXPECT_EQ(t.header, (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ(t.points, fixtures::points({{0, 0}, {1, 0}, {1, 1}}));
}

TEST(ReadCsv, NoHeader) {
  const io::CsvTable t = parse("1.5, -2e3\r\n3,4\n");
  EXPECT_TRUE(t.header.empty());
  EXPECT_EQ(t.points, fixtures::points({{1.5, -2000}, {3, 4}}));
}

TEST(ReadCsv, RowErrorsCarryLineNumbers) {
  try {
    parse("x,y\n0,0\n1,oops\n");
    FAIL();
  } catch (const CsvError& e) {
    EXPECT_EQ(e.row(), 3u);
    EXPECT_NE(std::string(e.what()).find("row 3"), std::string::npos);
  }
  EXPECT_THROW(parse("0,0\n1,2,3\n"), CsvError);
  EXPECT_THROW(parse("0,0\n1,inf\n"), CsvError);
  EXPECT_THROW(parse("x,y\n"), CsvError);
  EXPECT_THROW(parse(""), CsvError);
}

TEST(WriteCsv, RoundTripsExactly) {
  const PointSet pts = oracle::gaussian_points(25, 3, 6);
  std::ostringstream out;
  io::write_csv(out, pts, {"a", "b", "c"});
  const io::CsvTable back = parse(out.str());
  EXPECT_EQ(back.header.size(), 3u);
  EXPECT_EQ(back.points, pts);
}

TEST(RegionJson, CsvToJsonToCsvKeepsVertices) {
  const PointSet pts = oracle::gaussian_points(30, 2, 9);
  const PeelResult r = halfspace_peel(pts, 0.3);
  const io::Json doc = io::Json::parse(io::peel_result_json(r, 0.3).dump());
  const ConvexRegion back = io::region_from_json(doc);
  EXPECT_EQ(back.dim, 2);
  ASSERT_EQ(back.vertices.size(), r.chosen.vertices.size());
  std::ostringstream csv;
  io::write_csv(csv, io::vertex_matrix(back));
  const PointSet reread = parse(csv.str()).points;
  const PointSet original = io::vertex_matrix(r.chosen);
  for (Eigen::Index i = 0; i < original.rows(); ++i) {
    for (Eigen::Index j = 0; j < 2; ++j) EXPECT_NEAR(reread(i, j), original(i, j), 1e-15 * std::max(1.0, std::abs(original(i, j))));
  }
  EXPECT_EQ(doc["peels"].size(), r.peels.size());
  EXPECT_EQ(doc["algorithm"], "halfspace");
  EXPECT_EQ(doc["chosen_peel"], r.chosen_peel);
  EXPECT_EQ(io::region_from_json(doc["peels"][0]).affine_rank, 2);
}

TEST(RegionJson, Malformed) {
  EXPECT_THROW(io::region_from_json(io::Json::parse(R"({"vertices": [[0, 0], [1]], "facets": []})")), DimensionError);
  EXPECT_THROW(io::region_from_json(io::Json::parse(R"({"vertices": 3})")), Error);
}

TEST(Svg, OneGroupPerPeelPlusPoints) {
  const PointSet pts = oracle::gaussian_points(30, 2, 2);
  const PeelResult r = direct_peel(pts, 0.5);
  std::ostringstream out;
  io::write_svg(out, pts, r);
  const std::string svg = out.str();
  EXPECT_EQ(svg.rfind("<svg", 0) == 0 || svg.rfind("<?xml", 0) == 0, true);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  EXPECT_EQ(count_of(svg, "<g "), r.peels.size() + 1);
  EXPECT_EQ(count_of(svg, "<g "), count_of(svg, "</g>"));
  EXPECT_EQ(count_of(svg, "peel chosen"), 1u);
  std::size_t single = 0;
  for (const Peel& peel : r.peels) single += peel.region.vertices.size() == 1 ? 1 : 0;
  EXPECT_EQ(count_of(svg, "<circle"), 30u + single);
}

TEST(Svg, TwoDimensionsOnly) {
  const PointSet pts = oracle::gaussian_points(20, 3, 2);
  std::ostringstream out;
  EXPECT_THROW(io::write_svg(out, pts, direct_peel(pts, 0.5)), DimensionError);
}

namespace {

std::vector<CellSummary> sample_cells() {
  ExperimentConfig c;
  c.n = 20;
  c.alpha = 0.5;
  c.replicates = 2;
  c.test_sets = 3;
  c.seed = 1;
  ExperimentSummary s = run_experiment(c);
  CellSummary failed = s.cells.front();
  failed.ok = false;
  failed.failure = "replicate 1: boom, \"bad\"";
  s.cells.push_back(failed);
  return s.cells;
}

}  // namespace

TEST(SummaryCsv, Format) {
  const auto cells = sample_cells();
  std::ostringstream out;
  io::write_summary_csv(out, cells, false);
  const std::string text = out.str();
  EXPECT_EQ(text.find('\r'), std::string::npos);
  std::istringstream lines(text);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line,
            "algorithm,alpha,cov,n,p,error_mu,error_sigma,error_min,error_max,alpha_hat_mu,alpha_hat_sigma,"
            "too_many_mu,too_many_sigma,too_few_mu,too_few_sigma,volume_mu,volume_sigma,construction_seconds");
  const std::regex ok_row(R"(^(mahal|direct|halfspace),0\.5,A,20,2(,-?\d+\.\d{6}){12},$)");
  for (int i = 0; i < 3; ++i) {
    std::getline(lines, line);
    EXPECT_TRUE(std::regex_match(line, ok_row)) << line;
  }
  std::getline(lines, line);
  EXPECT_EQ(line, "mahal,0.5,A,20,2" + std::string(13, ','));
}

TEST(SummaryCsv, TimingOnlyOnRequest) {
  const auto cells = sample_cells();
  std::ostringstream out;
  io::write_summary_csv(out, cells, true);
  std::istringstream lines(out.str());
  std::string line;
  std::getline(lines, line);
  std::getline(lines, line);
  EXPECT_TRUE(std::regex_search(line, std::regex(R"(,\d+\.\d{6}$)"))) << line;
}

TEST(RuntimeCsv, Layout) {
  std::vector<CellSummary> cells;
  for (double alpha : {0.1, 0.5}) {
    for (Algorithm a : {Algorithm::halfspace, Algorithm::mahal, Algorithm::direct}) {
      CellSummary c;
      c.algorithm = a;
      c.alpha = alpha;
      c.n = 100;
      c.p = 2;
      c.construction_seconds = alpha;
      cells.push_back(c);
    }
  }
  std::ostringstream out;
  io::write_runtime_csv(out, cells);
  std::istringstream lines(out.str());
  std::string header, row;
  std::getline(lines, header);
  std::getline(lines, row);
  EXPECT_EQ(header, "p,n,cov,mahal_0.5,mahal_0.1,direct_0.5,direct_0.1,halfspace_0.5,halfspace_0.1");
  EXPECT_EQ(row, "2,100,A,0.500000,0.100000,0.500000,0.100000,0.500000,0.100000");
}

TEST(CsvField, Quoting) {
  EXPECT_EQ(io::csv_field("plain"), "plain");
  EXPECT_EQ(io::csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(io::csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
}

TEST(Manifest, CellsAndEcho) {
  const auto cells = sample_cells();
  io::ManifestInput in;
  in.alphas = {0.5};
  in.config.seed = 99;
  in.config.n = 20;
  const auto t = std::chrono::system_clock::time_point{} + std::chrono::seconds(86400);
  in.started = t;
  in.finished = t;
  const io::Json doc = io::manifest_json(in, cells);
  EXPECT_EQ(doc["seed"], 99u);
  EXPECT_EQ(doc["started_at"], "1970-01-02T00:00:00Z");
  EXPECT_EQ(doc["software"]["version"], version);
  ASSERT_EQ(doc["cells"].size(), cells.size());
  EXPECT_EQ(doc["cells"][0]["status"], "ok");
  EXPECT_EQ(doc["cells"][3]["status"].get<std::string>().rfind("failed(", 0), 0u);
  EXPECT_TRUE(doc["metrics"].contains("error_mu"));
  EXPECT_EQ(doc["config"]["alphas"], io::Json::array({0.5}));
}
