#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include <delpezzo/dyadic.hpp>
#include <delpezzo/torsor_s3.hpp>

using namespace delpezzo;

namespace {

/// Exhaustive count over all 7-tuples in the shells.
long long brute_ternary(const TernaryBox &b, bool coprime) {
  std::vector<std::vector<i64>> vals(7);
  for (std::size_t k = 0; k < 7; ++k)
    for (i64 a = b.K[k] + 1; a <= 2 * b.K[k]; ++a) {
      vals[k].push_back(a);
      vals[k].push_back(-a);
    }
  long long n = 0;
  for (i64 m1 : vals[0])
    for (i64 m2 : vals[1])
      for (i64 m3 : vals[2])
        for (i64 m4 : vals[3])
          for (i64 m5 : vals[4])
            for (i64 m6 : vals[5])
              for (i64 m7 : vals[6]) {
                if (m1 * m2 - m3 * m4 * m5 + m6 * m7 != 0) continue;
                if (coprime && gcd(m1 * m2, m3 * m4 * m5) != 1) continue;
                ++n;
              }
  return n;
}

bool in_box(const s3::TorsorVector &y, const DyadicBox &b) {
  auto a = y.as_array();
  for (std::size_t k = 0; k < 9; ++k)
    if (abs_value(a[k]) < b.Y[k] || abs_value(a[k]) >= 2 * b.Y[k]) return false;
  return true;
}

} // namespace

TEST(Ternary, TrivialBoxesAreEmpty) {
  EXPECT_EQ(count_ternary({{1, 1, 1, 1, 1, 1, 1}}), 0);
  EXPECT_EQ(count_ternary({{1, 1, 1, 1, 1, 1, 4}}), 0);
  // m3 m4 m5 = 8 forces m1 m2 odd, but then m6 m7 = 8 - m1 m2 is odd too,
  // impossible with |m6| = 2.
  EXPECT_EQ(count_ternary({{1, 2, 1, 1, 1, 1, 3}}), 0);
  EXPECT_EQ(brute_ternary({{1, 2, 1, 1, 1, 1, 3}}, true), 0);
}

TEST(Ternary, AgreesWithExhaustiveScan) {
  for (const auto &b : ternary_grid(32)) {
    EXPECT_EQ(count_ternary(b), brute_ternary(b, true));
    EXPECT_EQ(count_ternary(b, {false, nullptr}), brute_ternary(b, false));
  }
  TernaryBox odd{{2, 8, 1, 1, 1, 4, 4}};
  EXPECT_EQ(count_ternary(odd), brute_ternary(odd, true));
  EXPECT_EQ(count_ternary(odd), 96);
}

TEST(Ternary, CoprimalityOnlyRemovesSolutions) {
  for (const auto &b : ternary_grid(256)) EXPECT_LE(count_ternary(b), count_ternary(b, {false, nullptr}));
}

TEST(Ternary, GridSizes) {
  // Compositions of at most 10 (resp. 12) into 7 non-negative parts.
  EXPECT_EQ(ternary_grid(1 << 10).size(), 19448u);
  EXPECT_EQ(ternary_grid(1 << 12).size(), 50388u);
}

TEST(Ternary, BoundedRatioOnTheGrid) {
  auto small = check_ternary_bound(ternary_grid(1 << 10));
  EXPECT_DOUBLE_EQ(small.max_ratio, 6.0);
  EXPECT_EQ(small.argmax.K, (std::array<i64, 7>{2, 8, 1, 1, 1, 4, 4}));
  auto large = check_ternary_bound(ternary_grid(1 << 12));
  EXPECT_LE(large.max_ratio, 2 * small.max_ratio);
}

TEST(Ternary, DoublingTheLastTwoRangesStaysUnderTheMaximum) {
  auto grid = ternary_grid(1 << 10);
  const double rstar = 6.0;
  for (const auto &b : grid) {
    TernaryBox d = b;
    d.K[5] *= 2;
    d.K[6] *= 2;
    if (d.product() > (1 << 12)) continue;
    EXPECT_LE(static_cast<double>(count_ternary(d)), rstar * static_cast<double>(d.scale()));
  }
}

TEST(Ternary, Budget) {
  EXPECT_THROW((void)count_ternary({{32, 16, 16, 1, 1, 1, 1}}), budget_exceeded);
  EXPECT_THROW((void)count_ternary({{0, 1, 1, 1, 1, 1, 1}}), std::invalid_argument);
  DyadicLimits wide;
  wide.max_ternary_product = 1 << 13;
  EXPECT_NO_THROW((void)count_ternary({{16, 16, 32, 1, 1, 1, 1}}, {}, wide));
}

TEST(Dyadic, AllOnesBoxIsEmpty) { EXPECT_EQ(count_dyadic_box(DyadicBox{}, 4), 0); }

TEST(Dyadic, BoxesPastAMonomialAreEmpty) {
  DyadicBox first;  // Y03^2 Y04^2 Y23 Y24 = 64 * 4 > 100
  first.Y[1] = 8;
  first.Y[2] = 2;
  EXPECT_TRUE(first.provably_empty(100));
  EXPECT_EQ(count_dyadic_box(first, 100), 0);
  DyadicBox third;  // Y1 Y03 Y13^2 Y23^2 Y33 = 2 * 4 * 16 > 100
  third.Y[0] = 2;
  third.Y[3] = 2;
  third.Y[5] = 2;
  third.Y[7] = 4;
  EXPECT_TRUE(third.provably_empty(100));
  EXPECT_EQ(count_dyadic_box(third, 100), 0);
}

TEST(Dyadic, RandomEmptyBoxes) {
  std::mt19937 rng(17);
  const i64 B = 1000;
  std::uniform_int_distribution<int> e(0, 9);
  int tested = 0;
  while (tested < 100) {
    DyadicBox b;
    for (auto &y : b.Y) y = i64{1} << e(rng);
    if (!b.provably_empty(B)) continue;
    ++tested;
    EXPECT_EQ(count_dyadic_box(b, B), 0) << b.label();
  }
}

TEST(Dyadic, BoxCountsMatchFilteredEnumeration) {
  const i64 B = 400;
  auto all = s3::torsor_vectors(B);
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> e(0, 2);
  int nonzero = 0;
  for (int trial = 0; trial < 200; ++trial) {
    DyadicBox b;
    for (auto &y : b.Y) y = i64{1} << e(rng);
    long long expected = std::count_if(all.begin(), all.end(), [&](const auto &y) { return in_box(y, b); });
    EXPECT_EQ(count_dyadic_box(b, B), expected) << b.label();
    nonzero += expected > 0;
  }
  EXPECT_GT(nonzero, 0);
}

TEST(Dyadic, PartitionIdentity) {
  for (i64 B : {1, 10, 100, 1000}) {
    long long sum = 0;
    for (const auto &b : complete_dyadic_grid(B)) sum += count_dyadic_box(b, B);
    EXPECT_EQ(sum, s3::count_torsor(B).N) << B;
  }
}

TEST(Dyadic, GridContainsOnlyBoxesThatMayBeOccupied) {
  auto g = complete_dyadic_grid(1000);
  EXPECT_TRUE(std::none_of(g.begin(), g.end(), [](const DyadicBox &b) { return b.provably_empty(1000); }));
  EXPECT_TRUE(std::is_sorted(g.begin(), g.end()));
  EXPECT_THROW((void)complete_dyadic_grid(20000), budget_exceeded);
}

TEST(Dyadic, BoxBoundOnTheSmallGrid) {
  std::vector<DyadicBox> grid;
  for (int code = 0; code < 19683; ++code) {
    DyadicBox b;
    int c = code;
    for (std::size_t k = 0; k < 9; ++k, c /= 3) b.Y[k] = i64{1} << (c % 3);
    grid.push_back(b);
  }
  auto rep = check_box_bound(grid, 10000);
  EXPECT_DOUBLE_EQ(rep.max_ratio, 3.0);
  EXPECT_EQ(rep.argmax.label(), "4:4:1:1:1:1:1:1:1");
  EXPECT_EQ(rep.total, 28142);
  for (const auto &row : rep.rows)
    if (row.count == 0) EXPECT_EQ(row.ratio, 0.0);
}

TEST(Dyadic, CompleteGridReport) {
  auto rep = check_box_bound(complete_dyadic_grid(1000), 1000, 4);
  EXPECT_EQ(rep.total, 96238);
  EXPECT_DOUBLE_EQ(rep.max_ratio, 3.75);
  EXPECT_EQ(rep.argmax.label(), "1:1:1:1:16:1:1:16:1");
  std::ostringstream out;
  write_box_report_csv(out, rep);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')), "box,count,bound_denominator,ratio");
}

TEST(Dyadic, Budget) {
  EXPECT_THROW((void)count_dyadic_box(DyadicBox{}, 2'000'000), budget_exceeded);
  DyadicBox bad;
  bad.Y[4] = 0;
  EXPECT_THROW((void)count_dyadic_box(bad, 10), std::invalid_argument);
}
