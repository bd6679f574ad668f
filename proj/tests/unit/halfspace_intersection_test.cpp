#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "morderstats/geometry/halfspace_intersection.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace morderstats;
using fixtures::vec;

namespace {

std::vector<Hyperplane> box() {
  return {{vec({1, 0}), 1}, {vec({-1, 0}), 1}, {vec({0, 1}), 1}, {vec({0, -1}), 1}};
}

Hyperplane tangent(double theta) { return {vec({std::cos(theta), std::sin(theta)}), 1.0}; }

}  // namespace

TEST(HalfspaceIntersection, Box) {
  const auto hs = box();
  const ConvexRegion r = halfspace_intersection(std::span<const Hyperplane>(hs), vec({0, 0}));
  EXPECT_TRUE(oracle::same_point_set(r.vertices, {vec({1, 1}), vec({-1, 1}), vec({-1, -1}), vec({1, -1})}, 1e-12));
  EXPECT_EQ(r.facets.size(), 4u);
  EXPECT_NEAR(volume(r), 4.0, 1e-12);
}

TEST(HalfspaceIntersection, RedundantHalfspaceDropped) {
  const double r2 = std::sqrt(0.5);
  const std::vector<Hyperplane> hs = {
      {vec({0, -1}), 0}, {vec({-1, 0}), 0}, {vec({r2, r2}), r2}, {vec({1, 0}), 5}};  // last is redundant
  const ConvexRegion r = halfspace_intersection(std::span<const Hyperplane>(hs), vec({0.2, 0.2}));
  EXPECT_TRUE(oracle::same_point_set(r.vertices, {vec({0, 0}), vec({1, 0}), vec({0, 1})}, 1e-12));
  ASSERT_EQ(r.facets.size(), 3u);
  for (const Hyperplane& f : r.facets) EXPECT_NE(f.offset, 5.0);
}

TEST(HalfspaceIntersection, SidedHalfspaceOverload) {
  // x >= 0, y >= 0, x + y <= 1 written with explicit sides.
  const std::vector<Halfspace> hs = {
      {{vec({1, 0}), 0}, +1}, {{vec({0, 1}), 0}, +1}, {{vec({1, 1}), 1}, -1}};
  const ConvexRegion r = halfspace_intersection(std::span<const Halfspace>(hs), vec({0.2, 0.2}));
  EXPECT_TRUE(oracle::same_point_set(r.vertices, {vec({0, 0}), vec({1, 0}), vec({0, 1})}, 1e-12));
}

TEST(HalfspaceIntersection, TwentyTangentsToUnitCircle) {
  std::mt19937_64 rng(20);
  const double phase = std::uniform_real_distribution<double>(0.0, 2.0 * std::numbers::pi)(rng);
  std::vector<Hyperplane> hs;
  for (int i = 0; i < 20; ++i) hs.push_back(tangent(phase + 2.0 * std::numbers::pi * i / 20.0));
  std::shuffle(hs.begin(), hs.end(), rng);
  const ConvexRegion r = halfspace_intersection(std::span<const Hyperplane>(hs), vec({0, 0}));
  ASSERT_EQ(r.vertices.size(), 20u);
  const double sec = 1.0 / std::cos(std::numbers::pi / 20.0);
  for (const Vector& v : r.vertices) {
    EXPECT_GE(v.norm(), 1.0 - 1e-12);
    EXPECT_LE(v.norm(), sec + 1e-12);
  }
}

TEST(HalfspaceIntersection, RandomTangentsGiveSecantOfHalfGap) {
  // A vertex between consecutive tangent angles a < b sits at distance sec((b - a) / 2).
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> jitter(-0.1, 0.1);
  std::vector<double> angles;
  for (int i = 0; i < 20; ++i) angles.push_back(2.0 * std::numbers::pi * i / 20.0 + jitter(rng));
  std::vector<Hyperplane> hs;
  for (double a : angles) hs.push_back(tangent(a));
  const ConvexRegion r = halfspace_intersection(std::span<const Hyperplane>(hs), vec({0, 0}));
  std::vector<oracle::Vec> expected;
  for (std::size_t i = 0; i < angles.size(); ++i) {
    const double a = angles[i];
    const double b = i + 1 < angles.size() ? angles[i + 1] : angles[0] + 2.0 * std::numbers::pi;
    const double mid = 0.5 * (a + b);
    expected.push_back(vec({std::cos(mid), std::sin(mid)}) / std::cos(0.5 * (b - a)));
  }
  EXPECT_TRUE(oracle::same_point_set(r.vertices, expected, 1e-10));
}

TEST(HalfspaceIntersection, BadInteriorPoint) {
  const auto hs = box();
  EXPECT_THROW(halfspace_intersection(std::span<const Hyperplane>(hs), vec({2, 0})), BadInteriorPoint);
  EXPECT_THROW(halfspace_intersection(std::span<const Hyperplane>(hs), vec({1, 0})), BadInteriorPoint);
}

TEST(HalfspaceIntersection, Unbounded) {
  const std::vector<Hyperplane> two = {{vec({1, 0}), 1}, {vec({0, 1}), 1}};
  EXPECT_THROW(halfspace_intersection(std::span<const Hyperplane>(two), vec({0, 0})), UnboundedRegion);
  const double r2 = std::sqrt(0.5);
  const std::vector<Hyperplane> wedge = {{vec({1, 0}), 1}, {vec({0, 1}), 1}, {vec({r2, r2}), 2}};
  EXPECT_THROW(halfspace_intersection(std::span<const Hyperplane>(wedge), vec({0, 0})), UnboundedRegion);
}

TEST(HalfspaceIntersection, CubeIn3d) {
  std::vector<Hyperplane> hs;
  for (int axis = 0; axis < 3; ++axis) {
    Vector e = Vector::Zero(3);
    e[axis] = 1.0;
    hs.push_back({e, 1.0});
    hs.push_back({-e, 0.0});
  }
  const ConvexRegion r = halfspace_intersection(std::span<const Hyperplane>(hs), vec({0.3, 0.4, 0.5}));
  EXPECT_EQ(r.vertices.size(), 8u);
  EXPECT_EQ(r.facets.size(), 6u);
  EXPECT_NEAR(volume(r), 1.0, 1e-12);
}

TEST(FindInteriorPoint, ImprovesABoundaryCandidate) {
  const auto hs = box();
  const std::vector<Vector> candidates = {vec({1, 1})};
  const auto x = find_interior_point(hs, candidates, Tolerance{});
  ASSERT_TRUE(x.has_value());
  EXPECT_GT(min_slack(hs, *x), 1e-6);
}

TEST(FindInteriorPoint, NoneForAFlatIntersection) {
  const std::vector<Hyperplane> hs = {{vec({1, 0}), 0}, {vec({-1, 0}), 0}, {vec({0, 1}), 1}, {vec({0, -1}), 1}};
  const std::vector<Vector> candidates = {vec({0, 0})};
  EXPECT_FALSE(find_interior_point(hs, candidates, Tolerance{}).has_value());
}

TEST(EqualityConstrainedIntersection, SegmentOnAPinnedLine) {
  const std::vector<Hyperplane> hs = {{vec({1, 0}), 0}, {vec({-1, 0}), 0}, {vec({0, 1}), 1}, {vec({0, -1}), 2}};
  const std::vector<Vector> candidates = {vec({0, 0})};
  const auto r = detail::equality_constrained_intersection(hs, candidates, Tolerance{});
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(r->affine_rank, 1);
  EXPECT_TRUE(oracle::same_point_set(r->vertices, {vec({0, 1}), vec({0, -2})}, 1e-12));
  EXPECT_TRUE(contains(*r, vec({0, 0.5})));
  EXPECT_FALSE(contains(*r, vec({0.1, 0.5})));
}

TEST(EqualityConstrainedIntersection, TwoPinnedLinesMeetInAPoint) {
  const std::vector<Hyperplane> hs = {
      {vec({1, 0}), 0.5}, {vec({-1, 0}), -0.5}, {vec({0, 1}), 0.5}, {vec({0, -1}), -0.5}, {vec({1, 1}), 3}};
  const std::vector<Vector> candidates = {vec({0, 0})};
  const auto r = detail::equality_constrained_intersection(hs, candidates, Tolerance{});
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(r->affine_rank, 0);
  EXPECT_TRUE(oracle::same_point_set(r->vertices, {vec({0.5, 0.5})}, 1e-12));
}

TEST(EqualityConstrainedIntersection, InconsistentIsEmpty) {
  const std::vector<Hyperplane> hs = {{vec({1, 0}), 0}, {vec({-1, 0}), 0}, {vec({1, 0}), -1}};
  const std::vector<Vector> candidates = {vec({0, 0})};
  const auto r = detail::equality_constrained_intersection(hs, candidates, Tolerance{});
  ASSERT_TRUE(r.has_value());
  EXPECT_TRUE(r->empty());
  EXPECT_EQ(r->affine_rank, -1);
}

TEST(EqualityConstrainedIntersection, NoEqualitiesDefersToCaller) {
  const auto hs = box();
  const std::vector<Vector> candidates = {vec({0, 0})};
  EXPECT_FALSE(detail::equality_constrained_intersection(hs, candidates, Tolerance{}).has_value());
}
