#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hadamard/actions.hpp"
#include "hadamard/errors.hpp"

using namespace hadamard;

namespace {

Mat mat2(double a, double b, double c, double d) {
  Mat m(2, 2);
  m << a, b, c, d;
  return m;
}

Mat rotation(double theta) { return mat2(std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta)); }

}  // namespace

TEST(Isometry, ConstructorsValidate) {
  EXPECT_THROW(IsometryDescriptor::spd_congruence(mat2(2, 0, 0, 1)), DomainError);
  EXPECT_THROW(IsometryDescriptor::euclidean_affine(mat2(1, 1, 0, 1), Vec::Zero(2)), DomainError);
  EXPECT_THROW(IsometryDescriptor::euclidean_affine(Mat::Identity(2, 2), Vec::Zero(3)), UsageError);
  EXPECT_THROW(IsometryDescriptor::atom_permutation({0, 0}), UsageError);
  EXPECT_NO_THROW(IsometryDescriptor::spd_congruence(mat2(2, 0, 0, -0.5)));
}

TEST(Isometry, CongruenceActsAndInverts) {
  const auto m = SpaceModel::spd(2);
  const Mat t = mat2(1, 1, 0, 1);
  const auto phi = IsometryDescriptor::spd_congruence(t);
  const Point x = Point::matrix(mat2(2, 0.5, 0.5, 1));
  const Point y = apply(phi, m, x);
  EXPECT_LT((y.mat() - t * x.mat() * t.transpose()).norm(), 1e-14);
  EXPECT_LT((apply(inverse(phi), m, y).mat() - x.mat()).norm(), 1e-12);
  // d(I, T T^T) = length at the identity.
  EXPECT_NEAR(length_function(m, origin(m), phi), std::sqrt(2.0) * std::log((3.0 + std::sqrt(5.0)) / 2.0), 1e-12);
}

TEST(Isometry, ComposeMatchesSimplified) {
  const auto m = SpaceModel::spd(2);
  const auto a = IsometryDescriptor::spd_congruence(mat2(1, 2, 0, 1));
  const auto b = IsometryDescriptor::spd_congruence(rotation(0.4));
  const Point x = Point::matrix(mat2(3, 1, 1, 2));
  const Point lhs = apply(compose(a, b), m, x);
  const Point rhs = apply(compose_simplified(a, b), m, x);
  const Point seq = apply(a, m, apply(b, m, x));
  EXPECT_EQ(lhs, seq);
  EXPECT_LT((lhs.mat() - rhs.mat()).norm(), 1e-12);
  EXPECT_EQ(compose_simplified(a, b).kind(), IsometryKind::SpdCongruence);
}

TEST(Isometry, DerivativeMatchesFiniteDifference) {
  const auto m = SpaceModel::spd(2);
  const auto phi = IsometryDescriptor::spd_congruence(mat2(1, 0.5, 0, 1) * rotation(0.3));
  const Point x = Point::matrix(mat2(1.5, 0.2, 0.2, 0.8));
  const Mat d = derivative(phi, m, x);
  EXPECT_LT((d.transpose() * d - Mat::Identity(3, 3)).norm(), 1e-10);
  const double h = 1e-6;
  const Point y = apply(phi, m, x);
  for (Eigen::Index k = 0; k < 3; ++k) {
    Vec e = Vec::Zero(3);
    e[k] = 1.0;
    const Point moved = apply(phi, m, exp_map(m, {x, h * e}));
    const Vec fd = log_map(m, y, moved).coords / h;
    EXPECT_LT((fd - d.col(k)).norm(), 1e-5);
  }
}

TEST(Isometry, EuclideanAffine) {
  const auto m = SpaceModel::euclidean(2);
  Vec b(2);
  b << 1.0, -2.0;
  const auto phi = IsometryDescriptor::euclidean_affine(rotation(std::numbers::pi / 2), b);
  Vec x(2);
  x << 1.0, 0.0;
  const Point y = apply(phi, m, Point::vector(x));
  EXPECT_NEAR(y.vec()[0], 1.0, 1e-15);
  EXPECT_NEAR(y.vec()[1], -1.0, 1e-15);
  EXPECT_LT((derivative(phi, m, Point::vector(x)) - rotation(std::numbers::pi / 2)).norm(), 1e-15);
}

TEST(Isometry, AtomPermutationOnSimpleFunctions) {
  const auto m = SpaceModel::euclidean(1);
  const auto space = FiniteMeasureSpace::uniform(3);
  const SimpleFunction xi(space, m,
                          {Point::vector(Vec::Constant(1, 1.0)), Point::vector(Vec::Constant(1, 2.0)),
                           Point::vector(Vec::Constant(1, 3.0))});
  const SimpleFunction moved = apply(IsometryDescriptor::atom_permutation({2, 0, 1}), xi);
  EXPECT_EQ(moved.value(2).vec()[0], 1.0);
  EXPECT_EQ(moved.value(0).vec()[0], 2.0);
  EXPECT_EQ(moved.value(1).vec()[0], 3.0);
  EXPECT_NEAR(l2_distance(xi, moved), std::sqrt((1.0 + 1.0 + 4.0) / 3.0), 1e-12);
}

TEST(Deformation, EndpointsAndCuts) {
  const auto m = SpaceModel::euclidean(1);
  const auto phi = IsometryDescriptor::euclidean_affine(Mat::Identity(1, 1), Vec::Constant(1, 2.0));
  const auto space = FiniteMeasureSpace::unit_interval(4);
  const SimpleFunction xi = SimpleFunction::constant(space, m, Point::vector(Vec::Zero(1)));
  EXPECT_EQ(apply_deformed(deform(phi, 0.0), xi), xi);
  EXPECT_EQ(apply_deformed(deform(phi, 1.0), xi), apply(continuum_lift(phi, space), xi));
  EXPECT_THROW(deformed_dial(deform(phi, 0.3), space), UsageError);
  EXPECT_THROW(deform(phi, 1.5), UsageError);
  // Translation by 2 on the first 30% of the interval: sqrt(0.3 * 4).
  const SimpleFunction moved = apply_deformed(deform(phi, 0.3), xi);
  ASSERT_EQ(moved.space().size(), 5u);
  const double cut[] = {0.3};
  const auto [finer, parent] = space.refined_at(cut);
  EXPECT_NEAR(l2_distance(xi.refined(finer, parent), moved), std::sqrt(1.2), 1e-12);
  EXPECT_NEAR(deformed_length_integral(phi, xi, 0.3), std::sqrt(1.2), 1e-12);
}

TEST(Properness, TranslationBallOnTheLine) {
  const auto m = SpaceModel::euclidean(1);
  const IsometryDescriptor gens[] = {
      IsometryDescriptor::euclidean_affine(Mat::Identity(1, 1), Vec::Constant(1, 1.0))};
  const Point x = Point::vector(Vec::Zero(1));
  const auto prof = properness_profile(gens, m, x, 5, 1.0, {});
  ASSERT_EQ(prof.rows.size(), 6u);
  EXPECT_EQ(prof.elements, 11u);
  for (std::size_t k = 1; k <= 5; ++k) {
    EXPECT_EQ(prof.rows[k].words, 2u);
    EXPECT_NEAR(prof.rows[k].min_length, static_cast<double>(k), 1e-12);
  }
  EXPECT_EQ(prof.rows[3].overlap_free_fraction, 1.0);
  EXPECT_THROW(properness_profile(gens, m, x, 5, 1.0, {}, 4), ResourceError);
  EXPECT_THROW(properness_profile(gens, m, x, 9, 1.0, {}), ResourceError);
}

TEST(Properness, FiniteGroupStops) {
  const auto m = SpaceModel::euclidean(2);
  const IsometryDescriptor gens[] = {
      IsometryDescriptor::euclidean_affine(rotation(std::numbers::pi / 2), Vec::Zero(2))};
  Vec x(2);
  x << 1.0, 0.0;
  const auto prof = properness_profile(gens, m, Point::vector(x), 8, 1.0, {});
  EXPECT_EQ(prof.elements, 4u);
}

TEST(Invariance, IdentityHasNoDefect) {
  const auto m = SpaceModel::euclidean(1);
  const auto space = FiniteMeasureSpace::unit_interval(2);
  const Point x0 = Point::vector(Vec::Zero(1));
  const std::vector<ContinuumFiber> fibers = {
      {SimpleFunction::constant(space, m, Point::vector(Vec::Constant(1, 0.5))), 0.2}};
  const double s[] = {1.0, 10.0};
  const double cuts[] = {0.5, 1.0};
  const auto prof = asymptotic_invariance_profile(IsometryDescriptor::identity(), m, x0, TestFunction::gaussian(),
                                                  s, cuts, space, fibers);
  ASSERT_EQ(prof.rows.size(), 2u);
  for (const auto& r : prof.rows) {
    EXPECT_NEAR(r.measured, 0.0, 1e-15);
    EXPECT_TRUE(r.pass);
  }
  EXPECT_EQ(prof.radius, 0.0);
}
