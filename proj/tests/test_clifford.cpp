#include <gtest/gtest.h>

#include <cmath>

#include "hadamard/clifford.hpp"
#include "hadamard/errors.hpp"

using namespace hadamard;

namespace {

double anticommutator_defect(const CliffordAlgebra& alg) {
  double worst = 0.0;
  const auto d = static_cast<Eigen::Index>(alg.rep_dim());
  for (std::size_t i = 0; i < alg.m(); ++i) {
    for (std::size_t j = 0; j < alg.m(); ++j) {
      CMat ac = alg.gamma(i) * alg.gamma(j) + alg.gamma(j) * alg.gamma(i);
      if (i == j) ac -= 2.0 * CMat::Identity(d, d);
      worst = std::max(worst, ac.cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

Mat random_orthogonal(Eigen::Index n, CounterRng& rng) {
  Mat a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = rng.normal();
  Eigen::HouseholderQR<Mat> qr(a);
  return qr.householderQ() * Mat::Identity(n, n);
}

}  // namespace

TEST(Clifford, RelationsAndGrading) {
  for (const std::size_t m : {1u, 2u, 5u, 8u}) {
    const auto alg = CliffordAlgebra::build(m);
    EXPECT_EQ(alg->m(), m);
    EXPECT_EQ(alg->rep_dim(), std::size_t{1} << ((m + 1) / 2));
    EXPECT_LT(anticommutator_defect(*alg), 1e-14);
    EXPECT_LT(alg->relation_defect(), 1e-14);
    const CMat& z = alg->grading();
    const auto d = static_cast<Eigen::Index>(alg->rep_dim());
    EXPECT_LT((z * z - CMat::Identity(d, d)).norm(), 1e-14);
    for (std::size_t i = 0; i < m; ++i) {
      EXPECT_LT((z * alg->gamma(i) + alg->gamma(i) * z).norm(), 1e-14);
      EXPECT_LT((alg->gamma(i) - alg->gamma(i).adjoint()).norm(), 1e-14);
    }
  }
  EXPECT_THROW(CliffordAlgebra::build(13), ResourceError);
}

TEST(Clifford, VectorSquareIsNormSquared) {
  const auto alg = CliffordAlgebra::build(5);
  auto rng = CounterRng::stream(1, "square", 0);
  for (int k = 0; k < 20; ++k) {
    Vec v(5);
    for (int i = 0; i < 5; ++i) v[i] = rng.normal();
    const CliffordElement e = vector_element(alg, v);
    const CliffordElement sq = e * e;
    EXPECT_LT((sq.matrix - v.squaredNorm() * CMat::Identity(sq.matrix.rows(), sq.matrix.cols())).norm(), 1e-12);
    EXPECT_NEAR(e.norm(), v.norm(), 1e-12);
    EXPECT_TRUE(e.is_odd(1e-12));
  }
}

TEST(Clifford, FunctionalCalculusClosedForms) {
  const auto alg = CliffordAlgebra::build(4);
  auto rng = CounterRng::stream(2, "calculus", 0);
  for (int k = 0; k < 20; ++k) {
    Vec v(4);
    for (int i = 0; i < 4; ++i) v[i] = rng.uniform(-1.5, 1.5);
    const double n2 = v.squaredNorm();
    const auto dim = static_cast<Eigen::Index>(alg->rep_dim());
    // exp(-v^2) = exp(-|v|^2) Id; v exp(-v^2) is odd.
    const CliffordElement g = functional_calculus(TestFunction::gaussian(), v, alg);
    EXPECT_LT((g.matrix - std::exp(-n2) * CMat::Identity(dim, dim)).norm(), 1e-12);
    const CliffordElement h = functional_calculus(TestFunction::gaussian_times_t(), v, alg);
    EXPECT_LT((h.matrix - std::exp(-n2) * vector_element(alg, v).matrix).norm(), 1e-12);
    const ScalarVector sv = functional_calculus_sv(TestFunction::gaussian_times_t(), v);
    EXPECT_NEAR(sv.scalar, 0.0, 1e-15);
    EXPECT_NEAR(sv.norm(), std::sqrt(n2) * std::exp(-n2), 1e-12);
    // The spectral route agrees.
    const CliffordElement spectral = spectral_calculus(TestFunction::hat(1.0, 2.0), vector_element(alg, v));
    const CliffordElement direct = functional_calculus(TestFunction::hat(1.0, 2.0), v, alg);
    EXPECT_LT((spectral.matrix - direct.matrix).norm(), 1e-10);
  }
  const ScalarVector at_zero = functional_calculus_sv(TestFunction::gaussian(2.0, 1.0), Vec::Zero(3));
  EXPECT_DOUBLE_EQ(at_zero.scalar, 2.0);
  EXPECT_EQ(at_zero.vector.norm(), 0.0);
}

TEST(Clifford, TransformMapsVectorsAndMultiplies) {
  const auto alg = CliffordAlgebra::build(3);
  auto rng = CounterRng::stream(3, "transform", 0);
  const Mat o = random_orthogonal(3, rng);
  Vec v(3), w(3);
  v << 0.3, -1.0, 0.7;
  w << 1.2, 0.1, -0.4;
  const CliffordElement a = vector_element(alg, v), b = vector_element(alg, w);
  EXPECT_LT((clifford_transform(o, a).matrix - vector_element(alg, o * v).matrix).norm(), 1e-12);
  const CliffordElement lhs = clifford_transform(o, a * b);
  const CliffordElement rhs = clifford_transform(o, a) * clifford_transform(o, b);
  EXPECT_LT((lhs.matrix - rhs.matrix).norm(), 1e-12);
}

TEST(Clifford, EuclideanOperator) {
  const auto model = SpaceModel::euclidean(2);
  Vec x0(2), x(2);
  x0 << 1.0, 2.0;
  x << -0.5, 0.5;
  const FiberPoint p{Point::vector(x), 0.75};
  const Vec c = clifford_vector(model, Point::vector(x0), p);
  ASSERT_EQ(c.size(), 3);
  EXPECT_NEAR(c[0], -1.5, 1e-15);
  EXPECT_NEAR(c[1], -1.5, 1e-15);
  EXPECT_NEAR(c[2], 0.75, 1e-15);
  EXPECT_NEAR(clifford_operator(model, Point::vector(x0), p).norm(), c.norm(), 1e-12);
  EXPECT_THROW(clifford_vector(model, Point::vector(x0), {Point::vector(x), -1.0}), UsageError);
}

TEST(Clifford, BaseBoundOnEuclideanLine) {
  // On R the Bott difference of an odd hat is measured in closed form.
  const auto model = SpaceModel::euclidean(1);
  const TestFunction f = TestFunction::odd_hat(1.0, 1.0);
  std::vector<FiberPoint> fibers;
  for (double x = -3.0; x <= 3.0; x += 0.25) fibers.push_back({Point::vector(Vec::Constant(1, x)), 0.1});
  const auto rep = base_point_bound_check(f, model, Point::vector(Vec::Zero(1)), Point::vector(Vec::Constant(1, 0.3)),
                                          fibers);
  EXPECT_EQ(rep.violations, 0u);
  EXPECT_GT(rep.max_measured, 0.0);
  EXPECT_LE(rep.max_measured, base_point_bound(f, 0.3) + 1e-12);
}
