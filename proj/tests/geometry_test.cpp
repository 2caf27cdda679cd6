#include <gtest/gtest.h>

#include <delpezzo/catalog.hpp>
#include <delpezzo/geometry.hpp>

using namespace delpezzo;

namespace {

std::set<Line> known(const SurfaceRecord &s) { return {s.known_lines.begin(), s.known_lines.end()}; }

} // namespace

TEST(Lines, TypeVQuarticHasSixLinesInBothModels) {
  for (const char *id : {"q-v", "q-v-work"}) {
    const auto &s = catalog_get(id);
    auto found = find_rational_lines(s, 2);
    EXPECT_EQ(found.size(), 6u) << id;
    EXPECT_EQ(found, known(s)) << id;
  }
}

TEST(Lines, CayleyCubicHasNineLines) {
  const auto &s = catalog_get("c-cayley");
  auto found = find_rational_lines(s, 2);
  EXPECT_EQ(found.size(), 9u);
  EXPECT_EQ(found, known(s));
}

TEST(Lines, E6CubicHasOneLine) {
  const auto &s = catalog_get("c-e6");
  auto found = find_rational_lines(s, 2);
  ASSERT_EQ(found.size(), 1u);
  EXPECT_EQ(*found.begin(), s.known_lines[0]);
}

TEST(Lines, ToricCubicLines) {
  const auto &s = catalog_get("c-3a2");
  EXPECT_EQ(find_rational_lines(s, 1), known(s));
}

TEST(Lines, ThreadCountDoesNotChangeResult) {
  const auto &s = catalog_get("c-cayley");
  EXPECT_EQ(find_rational_lines(s, 1, 1), find_rational_lines(s, 1, 3));
}

TEST(Lines, PointIncidence) {
  const auto &s = catalog_get("q-v-work");
  EXPECT_TRUE(point_on_some_line(normalize({1, 1, 1, 0, 5}), std::span<const Line>(s.known_lines)));
  EXPECT_TRUE(point_on_some_line(normalize({0, 1, 0, 3, 0}), std::span<const Line>(s.known_lines)));
  EXPECT_FALSE(point_on_some_line(normalize({4, 1, 2, 2, -1}), std::span<const Line>(s.known_lines)));
}

TEST(Jacobian, SingularPointsOfTheTypeVQuartic) {
  const auto &s = catalog_get("q-v");
  for (auto p : {normalize({1, 0, 0, 0, 0}), normalize({0, 0, 0, 1, 0}), normalize({0, 0, 0, 0, 1})}) {
    EXPECT_LT(jacobian_rank_at(s, p), 2u);
    EXPECT_TRUE(is_singular_point(s, p));
  }
  // A smooth point: (0, 1, 0, 0, 0) is on both quadrics.
  auto smooth = normalize({0, 1, 0, 0, 0});
  EXPECT_EQ(jacobian_rank_at(s, smooth), 2u);
  EXPECT_FALSE(is_singular_point(s, smooth));
  EXPECT_THROW((void)jacobian_rank_at(s, normalize({1, 1, 1, 1, 1})), std::invalid_argument);
}

TEST(Jacobian, E6PointHasRankZero) {
  const auto &s = catalog_get("c-e6");
  auto p = normalize({0, 1, 0, 0});
  EXPECT_EQ(jacobian_rank_at(s, p), 0u);
  EXPECT_TRUE(is_singular_point(s, p));
  EXPECT_FALSE(is_singular_point(s, normalize({1, 0, 0, 0})));
}

TEST(Enumeration, NormalizedPointCounts) {
  // Points of P^1 with max-norm <= 2: (0,1),(1,0),(1,±1),(1,±2),(2,±1).
  std::size_t n = 0;
  for_each_normalized(2, 2, [&](std::span<const i64>) { ++n; });
  EXPECT_EQ(n, 8u);
}
