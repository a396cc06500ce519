#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "hadamard/parallel.hpp"
#include "hadamard/rng.hpp"

using namespace hadamard;

TEST(Parallel, MapMatchesSerial) {
  auto fn = [](std::size_t i) { return std::sin(static_cast<double>(i)) * 1e3 + 1.0 / (1.0 + i); };
  const auto a = parallel::map<double>(1000, fn);
  const auto b = parallel::map_serial<double>(1000, fn);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], b[i]);
  EXPECT_EQ(parallel::pairwise_sum(a), parallel::pairwise_sum(b));
}

TEST(Parallel, ExceptionsPropagate) {
  EXPECT_THROW(parallel::map<int>(100, [](std::size_t i) -> int {
                 if (i == 57) throw std::runtime_error("boom");
                 return 0;
               }),
               std::runtime_error);
}

TEST(Parallel, PairwiseSumOfIntegersIsExact) {
  std::vector<double> v(1001);
  std::iota(v.begin(), v.end(), 0.0);
  EXPECT_EQ(parallel::pairwise_sum(v), 500500.0);
  EXPECT_EQ(parallel::pairwise_sum({}), 0.0);
  EXPECT_EQ(parallel::max_of(v), 1000.0);
  EXPECT_EQ(parallel::min_of(v), 0.0);
}

TEST(Rng, StreamsAreDeterministicAndDistinct) {
  auto a = CounterRng::stream(7, "x", 3);
  auto b = CounterRng::stream(7, "x", 3);
  auto c = CounterRng::stream(7, "x", 4);
  auto d = CounterRng::stream(7, "y", 3);
  auto e = CounterRng::stream(8, "x", 3);
  const auto first = a.next_u64();
  EXPECT_EQ(first, b.next_u64());
  EXPECT_NE(first, c.next_u64());
  EXPECT_NE(first, d.next_u64());
  EXPECT_NE(first, e.next_u64());
}

TEST(Rng, UniformMomentsAndRange) {
  auto rng = CounterRng::stream(1, "moments", 0);
  double sum = 0.0, sq = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / n, 0.5, 5e-3);
  sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    sum += z;
    sq += z * z;
  }
  EXPECT_NEAR(sum / n, 0.0, 1e-2);
  EXPECT_NEAR(sq / n, 1.0, 2e-2);
  for (int i = 0; i < 1000; ++i) EXPECT_LT(rng.below(7), 7u);
}
