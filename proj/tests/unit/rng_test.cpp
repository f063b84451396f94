#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "sae/rng.hpp"

namespace sae {
namespace {

TEST(SeededRng, SameSeedSameStream) {
  SeededRng a(7), b(7);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.next_u64(), b.next_u64());
}

TEST(SeededRng, UniformInUnitInterval) {
  SeededRng r(3);
  double sum = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const double u = r.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 20000.0, 0.5, 0.01);
}

TEST(SeededRng, BelowCoversRangeOnly) {
  SeededRng r(11);
  std::set<std::size_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const std::size_t v = r.below(7);
    ASSERT_LT(v, 7u);
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), 7u);
  EXPECT_EQ(r.below(1), 0u);
}

TEST(SeededRng, NormalMoments) {
  SeededRng r(5);
  double sum = 0.0, sq = 0.0;
  const int n = 40000;
  for (int i = 0; i < n; ++i) {
    const double z = r.normal();
    sum += z;
    sq += z * z;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.02);
  EXPECT_NEAR(sq / n, 1.0, 0.03);
}

TEST(SeededRng, ShuffleIsPermutation) {
  SeededRng r(8);
  std::vector<int> v(50);
  std::iota(v.begin(), v.end(), 0);
  r.shuffle(std::span(v));
  std::vector<int> sorted = v;
  std::ranges::sort(sorted);
  for (int i = 0; i < 50; ++i) EXPECT_EQ(sorted[i], i);
  EXPECT_FALSE(std::ranges::is_sorted(v));
}

TEST(SeededRng, DeriveIgnoresConsumption) {
  SeededRng a(21), b(21);
  for (int i = 0; i < 10; ++i) b.next_u64();
  EXPECT_EQ(a.derive("folds").next_u64(), b.derive("folds").next_u64());
  EXPECT_NE(a.derive("folds").next_u64(), a.derive("fold-model").next_u64());
  EXPECT_NE(a.derive("fold-model", 0).next_u64(), a.derive("fold-model", 1).next_u64());
}

}  // namespace
}  // namespace sae
