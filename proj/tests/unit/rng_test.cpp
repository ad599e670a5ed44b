#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <vector>

#include "lsc/core/error.hpp"
#include "lsc/core/rng.hpp"

namespace lsc {
namespace {

TEST(RngTest, SameSeedSameSequence) {
  Rng a(42, "stream");
  Rng b(42, "stream");
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(a.next(), b.next());
  }
}

TEST(RngTest, StreamsAreIndependent) {
  EXPECT_NE(derive_seed(1, "a"), derive_seed(1, "b"));
  EXPECT_NE(derive_seed(1, "a"), derive_seed(2, "a"));
  Rng a(1, "a");
  Rng b(1, "b");
  EXPECT_NE(a.next(), b.next());
}

TEST(RngTest, UniformStaysInUnitInterval) {
  Rng rng(7);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(RngTest, BelowIsUnbiasedOnSmallRange) {
  Rng rng(3);
  std::vector<int> counts(5, 0);
  const int draws = 50000;
  for (int i = 0; i < draws; ++i) {
    ++counts[rng.below(5)];
  }
  // Chi-square with 4 degrees of freedom; 18.47 is the 0.001 critical value.
  double chi2 = 0.0;
  for (const int c : counts) {
    const double e = draws / 5.0;
    chi2 += (c - e) * (c - e) / e;
  }
  EXPECT_LT(chi2, 18.47);
}

TEST(RngTest, BelowZeroThrows) {
  Rng rng(0);
  EXPECT_THROW(rng.below(0), ValidationError);
}

TEST(RngTest, NormalHasUnitMoments) {
  Rng rng(11);
  const int n = 100000;
  double sum = 0.0;
  double sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.normal();
    sum += x;
    sq += x * x;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.02);
  EXPECT_NEAR(sq / n, 1.0, 0.02);
}

TEST(RngTest, ShuffleIsAPermutation) {
  Rng rng(5);
  std::vector<int> v(50);
  std::iota(v.begin(), v.end(), 0);
  rng.shuffle(std::span<int>(v));
  std::vector<int> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 50; ++i) {
    EXPECT_EQ(sorted[i], i);
  }
}

}  // namespace
}  // namespace lsc
