#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hadamard/errors.hpp"
#include "hadamard/spaces.hpp"

using namespace hadamard;

namespace {

Mat mat2(double a, double b, double c, double d) {
  Mat m(2, 2);
  m << a, b, c, d;
  return m;
}

// Independent oracle for SPD(2): generalized eigenvalues of (A, B) from the
// characteristic polynomial of A^{-1} B.
double spd2_distance_oracle(const Mat& a, const Mat& b) {
  const Mat m = a.inverse() * b;
  const double tr = m.trace();
  const double det = m.determinant();
  const double disc = std::sqrt(tr * tr / 4.0 - det);
  const double l1 = tr / 2.0 + disc;
  const double l2 = tr / 2.0 - disc;
  return std::hypot(std::log(l1), std::log(l2));
}

}  // namespace

TEST(Euclidean, DistanceGeodesicExpLog) {
  const auto m = SpaceModel::euclidean(3);
  const Point a = Point::vector(Vec::Constant(3, 1.0));
  const Point b = Point::vector(Vec::Zero(3));
  EXPECT_NEAR(distance(m, a, b), std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(geodesic(m, a, b, 0.25).vec()[0], 0.75, 1e-15);
  const TangentVector v = log_map(m, a, b);
  EXPECT_NEAR((v.coords + Vec::Constant(3, 1.0)).norm(), 0.0, 1e-15);
  EXPECT_NEAR((exp_map(m, v).vec() - b.vec()).norm(), 0.0, 1e-15);
  EXPECT_EQ(m.name(), "euclidean:3");
  EXPECT_EQ(m.dim(), 3u);
}

TEST(Euclidean, ParallelogramLawMakesCnResidualVanish) {
  const auto m = SpaceModel::euclidean(4);
  auto rng = CounterRng::stream(1, "cn", 0);
  for (int i = 0; i < 50; ++i) {
    const Point p = random_point(m, rng), q = random_point(m, rng), r = random_point(m, rng);
    EXPECT_NEAR(cn_inequality_residual(m, p, q, r), 0.0, 1e-12);
  }
}

TEST(Euclidean, SchoenbergGramIsDotProductGram) {
  const auto m = SpaceModel::euclidean(3);
  auto rng = CounterRng::stream(1, "gram", 0);
  const Point base = random_point(m, rng);
  std::vector<Point> pts;
  for (int i = 0; i < 5; ++i) pts.push_back(random_point(m, rng));
  const Mat g = schoenberg_gram(m, base, pts);
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      EXPECT_NEAR(g(i, j), (pts[i].vec() - base.vec()).dot(pts[j].vec() - base.vec()), 1e-10);
    }
  }
  EXPECT_GE(min_eigenvalue_ratio(g), -1e-12);
}

TEST(Euclidean, ComparisonAngles) {
  const auto m = SpaceModel::euclidean(2);
  const Point o = Point::vector(Vec::Zero(2));
  Vec e1(2), e2(2);
  e1 << 1, 0;
  e2 << 0, 1;
  EXPECT_NEAR(comparison_angle(m, Point::vector(e1), o, Point::vector(e2)), std::numbers::pi / 2, 1e-12);
  EXPECT_NEAR(comparison_angle(m, Point::vector(e1), o, Point::vector(-e1)), std::numbers::pi, 1e-7);
  const AngleProfile prof = angle_between(m, o, Point::vector(e1), Point::vector(e2));
  EXPECT_TRUE(prof.monotone);
  EXPECT_NEAR(prof.angle, std::numbers::pi / 2, 1e-9);
}

TEST(Spd, DiagonalDistanceIsSqrtTwo) {
  const auto m = SpaceModel::spd(2);
  const Point a = Point::matrix(mat2(std::numbers::e, 0, 0, 1 / std::numbers::e));
  EXPECT_NEAR(distance(m, a, origin(m)), std::sqrt(2.0), 1e-12);
}

TEST(Spd, ShearDistanceMatchesClosedForm) {
  const auto m = SpaceModel::spd(2);
  const Mat t = mat2(1, 1, 0, 1);
  const Point a = Point::matrix(t.transpose() * t);
  const double expected = std::sqrt(2.0) * std::log((3.0 + std::sqrt(5.0)) / 2.0);
  EXPECT_NEAR(distance(m, a, origin(m)), expected, 1e-12);
}

TEST(Spd, DistanceMatchesCharacteristicPolynomialOracle) {
  const auto m = SpaceModel::spd(2);
  auto rng = CounterRng::stream(2, "spd-oracle", 0);
  for (int i = 0; i < 100; ++i) {
    const Point a = random_point(m, rng), b = random_point(m, rng);
    EXPECT_NEAR(distance(m, a, b), spd2_distance_oracle(a.mat(), b.mat()), 1e-9);
  }
}

TEST(Spd, MidpointSolvesRiccatiEquation) {
  const auto m = SpaceModel::spd(3);
  auto rng = CounterRng::stream(3, "riccati", 0);
  for (int i = 0; i < 20; ++i) {
    const Point a = random_point(m, rng), b = random_point(m, rng);
    const Mat mid = geodesic(m, a, b, 0.5).mat();
    const Mat lhs = mid * a.mat().inverse() * mid;
    EXPECT_LT((lhs - b.mat()).norm(), 1e-9 * (1.0 + b.mat().norm()));
    EXPECT_NEAR(distance(m, a, geodesic(m, a, b, 0.3)), 0.3 * distance(m, a, b), 1e-9);
  }
}

TEST(Spd, FrameIsOrthonormal) {
  // Moving a distance h along a frame vector lands at distance exactly h.
  const auto m = SpaceModel::spd(3);
  auto rng = CounterRng::stream(4, "frame", 0);
  const Point a = random_point(m, rng);
  for (std::size_t k = 0; k < m.dim(); ++k) {
    Vec c = Vec::Zero(static_cast<Eigen::Index>(m.dim()));
    c[static_cast<Eigen::Index>(k)] = 0.37;
    EXPECT_NEAR(distance(m, a, exp_map(m, {a, c})), 0.37, 1e-10);
  }
}

TEST(Spd, CongruenceIsIsometry) {
  const auto m = SpaceModel::spd(3);
  auto rng = CounterRng::stream(5, "congruence", 0);
  for (int i = 0; i < 20; ++i) {
    Mat t = Mat::Random(3, 3) + 2.0 * Mat::Identity(3, 3);
    const Point a = random_point(m, rng), b = random_point(m, rng);
    const Point ta = Point::matrix(t * a.mat() * t.transpose());
    const Point tb = Point::matrix(t * b.mat() * t.transpose());
    EXPECT_NEAR(distance(m, ta, tb), distance(m, a, b), 1e-8);
  }
}

TEST(Spd, ExpLogRoundTrip) {
  const auto m = SpaceModel::spd(2, true);
  auto rng = CounterRng::stream(6, "roundtrip", 0);
  for (int i = 0; i < 20; ++i) {
    const Point a = random_point(m, rng), b = random_point(m, rng);
    EXPECT_NEAR(a.mat().determinant(), 1.0, 1e-9);
    const Point back = exp_map(m, log_map(m, a, b));
    EXPECT_LT((back.mat() - b.mat()).norm(), 1e-8);
    EXPECT_NEAR(log_map(m, a, b).norm(), distance(m, a, b), 1e-9);
  }
  EXPECT_EQ(m.dim(), 2u);
  EXPECT_EQ(m.name(), "spd1:2");
}

TEST(Spd, CnInequalityHolds) {
  const auto m = SpaceModel::spd(3);
  auto rng = CounterRng::stream(7, "cn", 0);
  for (int i = 0; i < 200; ++i) {
    const Point p = random_point(m, rng), q = random_point(m, rng), r = random_point(m, rng);
    EXPECT_GE(cn_inequality_residual(m, p, q, r), -1e-9);
  }
}

TEST(Product, DistanceIsWeightedL2) {
  const auto f1 = SpaceModel::spd(2);
  const auto f2 = SpaceModel::euclidean(1);
  const auto m = SpaceModel::product({{f1, 0.25}, {f2, 0.75}});
  auto rng = CounterRng::stream(8, "product", 0);
  const Point a1 = random_point(f1, rng), b1 = random_point(f1, rng);
  const Point a2 = random_point(f2, rng), b2 = random_point(f2, rng);
  const Point a = Point::product({a1, a2}), b = Point::product({b1, b2});
  const double d1 = distance(f1, a1, b1), d2 = distance(f2, a2, b2);
  EXPECT_NEAR(distance(m, a, b), std::sqrt(0.25 * d1 * d1 + 0.75 * d2 * d2), 1e-12);
  EXPECT_EQ(m.dim(), 4u);
}

TEST(Errors, ShapesAndDomain) {
  const auto m = SpaceModel::spd(2);
  EXPECT_THROW(check_compatible(m, Point::vector(Vec::Zero(2))), UsageError);
  EXPECT_THROW(validate(m, Point::matrix(mat2(1, 0, 0, -1))), DomainError);
  EXPECT_THROW(validate(SpaceModel::spd(2, true), Point::matrix(mat2(2, 0, 0, 2))), DomainError);
  EXPECT_THROW(distance(SpaceModel::euclidean(2), Point::vector(Vec::Zero(2)), Point::vector(Vec::Zero(3))),
               UsageError);
  EXPECT_THROW(SpaceModel::euclidean(0), UsageError);
}
