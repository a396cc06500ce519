#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "hadamard/errors.hpp"
#include "hadamard/test_function.hpp"

using namespace hadamard;

namespace {

// Dense-sampling lower bounds for the two functionals.
double oscillation_brute(const TestFunction& f, double r, double range, double h) {
  double best = 0.0;
  const int steps = static_cast<int>(std::ceil(r / h));
  for (double t = -range; t <= range; t += h) {
    const double ft = f(t);
    for (int k = 0; k <= steps; ++k) {
      const double d = std::min(r, k * h);
      best = std::max(best, std::abs(ft - f(t + d)));
    }
  }
  return best;
}

double mean_functional_brute(const TestFunction& f, double r, double range, double h) {
  double best = 0.0;
  for (double t = r; t <= range; t += h) best = std::max(best, std::abs(f(t) - f(-t)) / (2.0 * t));
  return r * best;
}

std::vector<TestFunction> family() {
  return {TestFunction::gaussian(1.0, 1.0), TestFunction::gaussian(2.0, 0.5), TestFunction::hat(1.0, 2.0),
          TestFunction::odd_hat(1.5, 1.0),  TestFunction::gaussian_times_t(1.0, 0.7),
          TestFunction::grid({0.0, 0.3, 1.0, -0.5, 0.2, 0.4, 0.0}, 0.4)};
}

}  // namespace

TEST(TestFunction, FamilyValues) {
  EXPECT_DOUBLE_EQ(TestFunction::gaussian(2.0, 1.0)(1.0), 2.0 * std::exp(-1.0));
  EXPECT_DOUBLE_EQ(TestFunction::hat(1.0, 2.0)(1.0), 0.5);
  EXPECT_DOUBLE_EQ(TestFunction::odd_hat(1.0, 1.0)(1.5), 0.5);
  EXPECT_DOUBLE_EQ(TestFunction::odd_hat(1.0, 1.0)(-0.5), -0.5);
  EXPECT_DOUBLE_EQ(TestFunction::odd_hat(1.0, 1.0)(3.0), 0.0);
  EXPECT_NEAR(TestFunction::gaussian_times_t(1.0, 1.0).sup_norm(), std::exp(-0.5) / std::sqrt(2.0), 1e-12);
}

TEST(TestFunction, OscillationAgreesWithBruteForce) {
  for (const auto& f : family()) {
    for (const double r : {0.05, 0.3, 1.0, 2.5}) {
      const double exact = oscillation(f, r);
      const double brute = oscillation_brute(f, r, 6.0, 1e-3);
      EXPECT_GE(exact, brute - 1e-9) << f.name() << " r=" << r;
      EXPECT_LE(exact, brute + 5e-3) << f.name() << " r=" << r;
    }
  }
}

TEST(TestFunction, MeanFunctionalAgreesWithBruteForce) {
  for (const auto& f : family()) {
    for (const double r : {0.05, 0.3, 1.0, 2.5}) {
      const double exact = mean_functional(f, r);
      const double brute = mean_functional_brute(f, r, 20.0, 1e-4);
      EXPECT_GE(exact, brute - 1e-9) << f.name() << " r=" << r;
      EXPECT_LE(exact, brute + 1e-3) << f.name() << " r=" << r;
    }
  }
}

TEST(TestFunction, KnownFunctionals) {
  const auto hat = TestFunction::hat(1.0, 1.0);
  EXPECT_NEAR(oscillation(hat, 0.3), 0.3, 1e-12);
  EXPECT_NEAR(oscillation(hat, 4.0), 1.0, 1e-12);
  EXPECT_NEAR(mean_functional(hat, 0.3), 0.0, 1e-15);  // even
  const auto odd = TestFunction::odd_hat(2.0, 1.0);
  EXPECT_NEAR(mean_functional(odd, 0.5), 0.5 * 2.0, 1e-12);
  EXPECT_EQ(base_point_bound(odd, 0.0), 0.0);
}

TEST(TestFunction, RescalingMovesTheRadius) {
  for (const auto& f : family()) {
    for (const double s : {0.5, 3.0}) {
      const TestFunction g = f.rescale(s);
      EXPECT_NEAR(g(0.77), f(0.77 / s), 1e-12) << f.name();
      for (const double r : {0.1, 1.0}) {
        EXPECT_NEAR(oscillation(g, r), oscillation(f, r / s), 1e-9) << f.name();
        EXPECT_NEAR(mean_functional(g, r), mean_functional(f, r / s), 1e-9) << f.name();
      }
    }
  }
}

TEST(TestFunction, EvenAndOddParts) {
  for (const auto& f : family()) {
    const TestFunction e = f.even_part(), o = f.odd_part();
    EXPECT_TRUE(e.is_even()) << f.name();
    EXPECT_TRUE(o.is_odd()) << f.name();
    for (const double t : {-1.3, -0.2, 0.0, 0.45, 2.0}) {
      EXPECT_NEAR(e(t) + o(t), f(t), 1e-12) << f.name();
    }
  }
}

TEST(TestFunction, FunctionalsShrinkWithRadius) {
  for (const auto& f : family()) {
    double previous = oscillation(f, 1.0);
    for (const double r : {0.1, 0.01, 0.001}) {
      const double now = oscillation(f, r);
      EXPECT_LE(now, previous + 1e-15);
      previous = now;
    }
    EXPECT_LT(previous, 0.01) << f.name();
    EXPECT_LT(mean_functional(f, 1e-3), 0.01) << f.name();
  }
}

TEST(TestFunction, GridValidation) {
  const auto g = TestFunction::grid({0.0, 1.0, 0.0}, 0.5);
  EXPECT_DOUBLE_EQ(g(0.25), 0.5);
  EXPECT_DOUBLE_EQ(g(10.0), 0.0);
  EXPECT_THROW(TestFunction::grid({0.0, 1.0, 0.0}, -1.0), UsageError);
}
