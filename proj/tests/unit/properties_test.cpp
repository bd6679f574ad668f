#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "morderstats/depth/direct_peel.hpp"
#include "morderstats/depth/halfspace_peel.hpp"
#include "morderstats/depth/mahal_region.hpp"
#include "morderstats/geometry/halfspace_intersection.hpp"
#include "morderstats/geometry/region.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace morderstats;

namespace {

std::vector<Vector> sorted_vertices(const ConvexRegion& r) {
  std::vector<Vector> v = r.vertices;
  std::sort(v.begin(), v.end(), [](const Vector& a, const Vector& b) {
    return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
  });
  return v;
}

PointSet permuted(const PointSet& pts, std::uint64_t seed) {
  std::vector<Eigen::Index> order(static_cast<std::size_t>(pts.rows()));
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  PointSet out(pts.rows(), pts.cols());
  for (std::size_t i = 0; i < order.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = pts.row(order[i]);
  return out;
}

PointSet as_points(const std::vector<Vector>& v) {
  PointSet out(static_cast<Eigen::Index>(v.size()), v.front().size());
  for (std::size_t i = 0; i < v.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = v[i].transpose();
  return out;
}

}  // namespace

class HullProperties : public ::testing::TestWithParam<int> {};

TEST_P(HullProperties, IdempotentOnVertices) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const PointSet pts = oracle::gaussian_points(40, GetParam(), seed);
    const ConvexRegion h = convex_hull(pts);
    const ConvexRegion again = convex_hull(as_points(h.vertices));
    EXPECT_TRUE(oracle::same_point_set(h.vertices, again.vertices, 1e-12));
    EXPECT_NEAR(volume(h), volume(again), 1e-12 * volume(h));
  }
}

TEST_P(HullProperties, PermutationInvariant) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const PointSet pts = oracle::gaussian_points(40, GetParam(), seed);
    const ConvexRegion a = convex_hull(pts);
    const ConvexRegion b = convex_hull(permuted(pts, seed + 100));
    EXPECT_TRUE(oracle::same_point_set(a.vertices, b.vertices, 0.0));
    EXPECT_NEAR(volume(a), volume(b), 1e-12 * volume(a));
  }
}

TEST_P(HullProperties, DualityRoundTrip) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const PointSet pts = oracle::gaussian_points(30, GetParam(), seed);
    const ConvexRegion h = convex_hull(pts);
    const Vector inside = pts.colwise().mean().transpose();
    const ConvexRegion back = halfspace_intersection(std::span<const Hyperplane>(h.facets), inside);
    EXPECT_TRUE(oracle::same_point_set(h.vertices, back.vertices, 1e-8));
  }
}

TEST_P(HullProperties, VolumeMonotone) {
  const PointSet pts = oracle::gaussian_points(60, GetParam(), 3);
  double previous = 0.0;
  for (Eigen::Index m = GetParam() + 2; m <= pts.rows(); m += 5) {
    const double v = volume(convex_hull(pts.topRows(m)));
    EXPECT_GE(v, previous - 1e-12);
    previous = v;
  }
}

TEST_P(HullProperties, ContainsEveryInputPoint) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const PointSet pts = oracle::gaussian_points(50, GetParam(), seed);
    EXPECT_EQ(count_inside(convex_hull(pts), pts), 50u);
  }
}

INSTANTIATE_TEST_SUITE_P(Dimensions, HullProperties, ::testing::Values(2, 3));

TEST(PeelProperties, NestedAndDecreasing) {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const PointSet pts = oracle::gaussian_points(30, 2, seed);
    for (const PeelResult& r : {halfspace_peel(pts, 0.5), direct_peel(pts, 0.5)}) {
      for (std::size_t i = 1; i < r.peels.size(); ++i) {
        EXPECT_LE(r.peels[i].points_inside, r.peels[i - 1].points_inside);
        EXPECT_GE(r.peels[i].alpha_hat, r.peels[i - 1].alpha_hat);
        for (const Vector& v : r.peels[i].region.vertices) EXPECT_TRUE(contains(r.peels[i - 1].region, v, Tolerance{1e-7, 1e-7}));
      }
    }
  }
}

TEST(PeelProperties, Deterministic) {
  const PointSet pts = oracle::gaussian_points(40, 2, 8);
  const PeelResult a = halfspace_peel(pts, 0.3);
  const PeelResult b = halfspace_peel(pts, 0.3);
  EXPECT_EQ(a.alpha_hat, b.alpha_hat);
  ASSERT_EQ(a.peels.size(), b.peels.size());
  for (std::size_t i = 0; i < a.peels.size(); ++i) {
    EXPECT_EQ(sorted_vertices(a.peels[i].region), sorted_vertices(b.peels[i].region));
    EXPECT_EQ(a.peels[i].region.vertices, b.peels[i].region.vertices);
  }
}

TEST(PeelProperties, AffineEquivariantCounts) {
  Matrix t(2, 2);
  t << 3, 1, -1, 2;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const PointSet pts = oracle::gaussian_points(25, 2, seed);
    const PointSet moved = (pts * t.transpose()).rowwise() + Eigen::RowVector2d(4, -7);
    for (double alpha : {0.2, 0.5}) {
      const PeelResult a = halfspace_peel(pts, alpha);
      const PeelResult b = halfspace_peel(moved, alpha);
      ASSERT_EQ(a.peels.size(), b.peels.size()) << seed;
      for (std::size_t i = 0; i < a.peels.size(); ++i) EXPECT_EQ(a.peels[i].points_inside, b.peels[i].points_inside);
      const PeelResult c = direct_peel(pts, alpha);
      const PeelResult d = direct_peel(moved, alpha);
      EXPECT_EQ(c.alpha_hat, d.alpha_hat);
      const PeelResult e = mahal_region(pts, alpha);
      const PeelResult f = mahal_region(moved, alpha);
      EXPECT_EQ(e.alpha_hat, f.alpha_hat);
    }
  }
}

TEST(PeelProperties, ReportedCountsMatchContainment) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const PointSet pts = oracle::gaussian_points(20, 2, seed);
    for (const PeelResult& r : {halfspace_peel(pts, 0.5), direct_peel(pts, 0.5), mahal_region(pts, 0.5)}) {
      for (const Peel& peel : r.peels) {
        EXPECT_EQ(peel.points_inside, count_inside(peel.region, pts));
        EXPECT_DOUBLE_EQ(peel.alpha_hat, 1.0 - static_cast<double>(peel.points_inside) / 20.0);
      }
    }
  }
}
