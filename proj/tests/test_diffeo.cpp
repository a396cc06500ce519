#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hadamard/diffeo.hpp"
#include "hadamard/errors.hpp"

using namespace hadamard;

namespace {

TorusDiffeo cat() {
  IntMat a(2, 2);
  a << 2, 1, 1, 1;
  return TorusDiffeo::linear(a);
}

// lambda_+ of x1 += a sin(2 pi k x0 + c) in n = 2 from a fine 1-D Simpson
// rule: the Jacobian is [[1, 0], [b, 1]] with top singular value
// (|b| + sqrt(b^2 + 4)) / 2.
double shear_lambda_oracle(double a, int k, double c) {
  const int n = 20000;
  auto integrand = [&](double x) {
    const double b = 2.0 * std::numbers::pi * k * a * std::cos(2.0 * std::numbers::pi * k * x + c);
    const double l = std::log((std::abs(b) + std::sqrt(b * b + 4.0)) / 2.0);
    return l * l;
  };
  double s = integrand(0.0) + integrand(1.0);
  for (int i = 1; i < n; ++i) s += (i % 2 == 1 ? 4.0 : 2.0) * integrand(static_cast<double>(i) / n);
  return std::sqrt(s / (3.0 * n));
}

}  // namespace

TEST(Diffeo, CatMapLambdaIsExact) {
  const double expected = std::log((3.0 + std::sqrt(5.0)) / 2.0);
  EXPECT_NEAR(lambda_plus(cat(), 8).value, expected, 1e-12);
  EXPECT_NEAR(lambda(cat().power(5), 8), 5.0 * expected, 1e-9);
  EXPECT_TRUE(cat().preserves_lattice());
  EXPECT_EQ(cat().power(3).kind(), DiffeoKind::Linear);
  const auto prof = geometric_discreteness_profile(cat(), 6, 8);
  EXPECT_TRUE(prof.discrete);
  EXPECT_NEAR(prof.slope, expected, 1e-9);
}

TEST(Diffeo, ShearLambdaMatchesOneDimensionalOracle) {
  for (const auto& [a, k, c] : {std::tuple{0.2, 1, 0.0}, std::tuple{0.1, 2, 0.7}, std::tuple{0.3, 1, 2.0}}) {
    const auto phi = TorusDiffeo::shear(2, 1, 0, a, k, c);
    EXPECT_NEAR(lambda_plus(phi, 128).value, shear_lambda_oracle(a, k, c), 1e-9) << a << " " << k;
  }
}

TEST(Diffeo, InverseRoundTripAndJacobian) {
  const auto phi = TorusDiffeo::composite(
      {TorusDiffeo::shear(2, 0, 1, 0.15, 2, 0.3), cat(), TorusDiffeo::shear(2, 1, 0, -0.2, 1, 1.1)});
  const auto inv = phi.inverse();
  Vec x(2);
  x << 0.31, 0.77;
  const Vec back = inv.apply(phi.apply(x));
  for (int i = 0; i < 2; ++i) {
    const double d = back[i] - x[i];
    EXPECT_NEAR(d - std::round(d), 0.0, 1e-12);
  }
  const Mat j = phi.jacobian(x);
  EXPECT_NEAR(j.determinant(), 1.0, 1e-12);
  const double h = 1e-6;
  for (int k = 0; k < 2; ++k) {
    Vec xp = x, xm = x;
    xp[k] += h;
    xm[k] -= h;
    Vec diff = phi.apply(xp) - phi.apply(xm);
    for (int i = 0; i < 2; ++i) diff[i] -= std::round(diff[i]);
    EXPECT_LT((diff / (2 * h) - j.col(k)).norm(), 1e-6);
  }
  EXPECT_LT((inv.jacobian(phi.apply(x)) * j - Mat::Identity(2, 2)).norm(), 1e-12);
}

TEST(Diffeo, SerialAndParallelAgreeBitwise) {
  const auto phi = TorusDiffeo::composite({TorusDiffeo::shear(3, 2, 0, 0.2, 1), TorusDiffeo::shear(3, 0, 1, 0.1, 2)});
  EXPECT_EQ(lambda_plus(phi, 16).value, lambda_plus_serial(phi, 16));
  const auto a = jacobian_field(phi, 8);
  const auto b = jacobian_field_serial(phi, 8);
  ASSERT_EQ(a.values.size(), 512u);
  for (std::size_t i = 0; i < a.values.size(); ++i) EXPECT_EQ(a.values[i], b.values[i]);
  EXPECT_LT(a.max_det_defect(), 1e-12);
}

TEST(Diffeo, ValidationErrors) {
  IntMat singular(2, 2);
  singular << 2, 0, 0, 1;
  EXPECT_THROW(TorusDiffeo::linear(singular), DomainError);
  EXPECT_THROW(TorusDiffeo::shear(2, 1, 1, 0.1, 1), UsageError);
  EXPECT_THROW(lambda_plus(TorusDiffeo::shear(2, 1, 0, 0.1, 1), 4), UsageError);
  EXPECT_FALSE(TorusDiffeo::shear(2, 1, 0, 0.1, 1).preserves_lattice());
}

TEST(Diffeo, RotationIsNotDiscrete) {
  IntMat r(2, 2);
  r << 0, -1, 1, 0;
  const auto prof = geometric_discreteness_profile(TorusDiffeo::linear(r), 8, 8);
  EXPECT_FALSE(prof.discrete);
  for (double l : prof.lambdas) EXPECT_NEAR(l, 0.0, 1e-12);
}

// In three dimensions the inverse can be longer than sqrt(n-1) times the
// map: the Jacobian [[1,0,0],[a,1,0],[0,b,1]] has an inverse with corner ab.
// The sharp factor n - 1 still holds.
TEST(Diffeo, InverseRatioExceedsSqrtTwoInThreeDimensions) {
  const auto phi = TorusDiffeo::composite({TorusDiffeo::shear(3, 1, 0, 0.5, 1), TorusDiffeo::shear(3, 2, 1, 0.5, 1)});
  const auto report = inverse_bound_check(phi, 32);
  const double ratio = report.lambda_plus_inverse / report.lambda_plus;
  EXPECT_GT(ratio, std::sqrt(2.0) + 0.05);
  EXPECT_LE(ratio, 2.0);
  EXPECT_FALSE(report.pass);
}

TEST(Diffeo, PushforwardOfLinearMapIsExact) {
  const std::size_t g = 4;
  const auto space = lattice_space(2, g);
  const auto model = SpaceModel::spd(2);
  auto rng = CounterRng::stream(1, "push", 0);
  std::vector<Point> values;
  for (std::size_t i = 0; i < space.size(); ++i) values.push_back(random_point(model, rng));
  const SimpleFunction xi(space, model, values);
  const auto res = pushforward_action(cat(), xi, g);
  EXPECT_TRUE(res.exact);
  EXPECT_LT(res.isometry_defect, 1e-9);
  // The pushforward preserves distances between functions.
  std::vector<Point> other;
  for (std::size_t i = 0; i < space.size(); ++i) other.push_back(random_point(model, rng));
  const SimpleFunction eta(space, model, other);
  EXPECT_NEAR(l2_distance(res.eta, pushforward_action(cat(), eta, g).eta), l2_distance(xi, eta), 1e-9);
}
