#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "hadamard/continuum.hpp"
#include "hadamard/errors.hpp"

using namespace hadamard;

namespace {

Point real(double x) { return Point::vector(Vec::Constant(1, x)); }

SimpleFunction line_function(const FiniteMeasureSpace& space, std::vector<double> xs) {
  std::vector<Point> values;
  for (double x : xs) values.push_back(real(x));
  return SimpleFunction(space, SpaceModel::euclidean(1), std::move(values));
}

// Smallest delta over every witness map I_1 -> I_2.
double best_delta(const FiniteMeasureSpace& space, const Partition& p1, const Partition& p2) {
  std::vector<std::size_t> map(p1.index_size, 0);
  double best = std::numeric_limits<double>::infinity();
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == map.size()) {
      best = std::min(best, partition_delta(space, p2, compose(map, p1, p2.index_size)));
      return;
    }
    for (std::size_t j = 0; j < p2.index_size; ++j) {
      map[i] = j;
      rec(i + 1);
    }
  };
  rec(0);
  return best;
}

}  // namespace

TEST(MeasureSpace, RefinedAtSplitsIntervals) {
  const auto space = FiniteMeasureSpace::unit_interval({0.0, 0.5, 1.0});
  const double cuts[] = {0.25, 0.5, 0.75};
  const auto [finer, parent] = space.refined_at(cuts);
  ASSERT_EQ(finer.size(), 4u);
  EXPECT_EQ(parent, (std::vector<std::size_t>{0, 0, 1, 1}));
  EXPECT_NEAR(finer.weight(1), 0.25, 1e-15);
  EXPECT_NEAR(finer.total(), 1.0, 1e-15);
  EXPECT_THROW(FiniteMeasureSpace({1.0, -1.0}), UsageError);
  EXPECT_THROW(FiniteMeasureSpace::unit_interval({0.0, 0.6, 0.4, 1.0}), UsageError);
}

TEST(SimpleFunction, L2DistanceAndGeodesic) {
  const FiniteMeasureSpace space({0.2, 0.3, 0.5});
  const auto xi = line_function(space, {0.0, 1.0, 2.0});
  const auto eta = line_function(space, {1.0, 1.0, -1.0});
  EXPECT_NEAR(l2_distance(xi, eta), std::sqrt(0.2 * 1 + 0.5 * 9), 1e-14);
  const auto mid = l2_geodesic(xi, eta, 0.5);
  EXPECT_NEAR(mid.value(2).vec()[0], 0.5, 1e-14);
  EXPECT_NEAR(l2_distance(xi, mid), 0.5 * l2_distance(xi, eta), 1e-14);
  EXPECT_NEAR(l2_cn_residual(xi, eta, mid), 0.0, 1e-12);
  EXPECT_THROW(l2_distance(xi, line_function(FiniteMeasureSpace::uniform(3), {0, 0, 0})), UsageError);
}

TEST(SimpleFunction, MergePreservesDistances) {
  const FiniteMeasureSpace space({0.25, 0.25, 0.5});
  const auto xi = line_function(space, {3.0, 3.0, 1.0});
  const auto eta = line_function(space, {0.0, 0.0, 2.0});
  const std::size_t merge[] = {0, 0, 1};
  const auto mxi = merge_atoms(xi, merge, 2);
  const auto meta = merge_atoms(eta, merge, 2);
  EXPECT_NEAR(mxi.space().weight(0), 0.5, 1e-15);
  EXPECT_NEAR(l2_distance(mxi, meta), l2_distance(xi, eta), 1e-14);
  const auto bad = line_function(space, {3.0, 2.0, 1.0});
  EXPECT_THROW(merge_atoms(bad, merge, 2), UsageError);
  const std::size_t not_onto[] = {0, 0, 0};
  EXPECT_THROW(merge_atoms(xi, not_onto, 2), UsageError);
}

TEST(Partitions, DeltaAndGreedyRefinement) {
  const FiniteMeasureSpace space({0.1, 0.2, 0.3, 0.15, 0.25});
  const Partition p1{3, {0, 0, 1, 2, 2}};
  const Partition p2{2, {1, 1, 0, 0, 1}};
  EXPECT_NEAR(partition_delta(space, p2, Partition{2, {1, 0, 0, 0, 1}}), 0.4, 1e-15);
  const auto r = refines(space, p1, p2, 0.5);
  EXPECT_NEAR(r.delta, best_delta(space, p1, p2), 1e-15);
  EXPECT_TRUE(r.refines);
  auto rng = CounterRng::stream(3, "partitions", 0);
  for (int trial = 0; trial < 100; ++trial) {
    Partition a{3, {}}, b{3, {}};
    for (std::size_t i = 0; i < space.size(); ++i) {
      a.assignment.push_back(rng.below(3));
      b.assignment.push_back(rng.below(3));
    }
    EXPECT_NEAR(refines(space, a, b, 0.0).delta, best_delta(space, a, b), 1e-14);
  }
}

TEST(Partitions, RefiningSequenceEncodesMembership) {
  const auto space = FiniteMeasureSpace::uniform(4);
  const auto seq = refining_sequence(space, {{0, 1}, {1, 2}});
  ASSERT_EQ(seq.size(), 2u);
  EXPECT_EQ(seq[0].index_size, 2u);
  EXPECT_EQ(seq[1].index_size, 4u);
  EXPECT_EQ(seq[1].assignment, (std::vector<std::size_t>{1, 3, 2, 0}));
  // Each stage refines the previous one exactly.
  EXPECT_EQ(refines(space, seq[1], seq[0], 0.0).delta, 0.0);
  EXPECT_THROW(refining_sequence(space, {{7}}), UsageError);
}

TEST(Approximation, SimpleApproximationWithinBound) {
  const FiniteMeasureSpace space({0.5, 0.5, 1.0});
  const auto xi = line_function(space, {0.05, 0.95, 2.02});
  const std::vector<Point> centers = {real(0.0), real(1.0), real(2.0)};
  const auto approx = approximate_by_simple(xi, centers, 0.1);
  EXPECT_EQ(approx.center_of_atom, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_NEAR(approx.distance, std::sqrt(0.5 * 0.0025 + 0.5 * 0.0025 + 0.0004), 1e-14);
  EXPECT_LE(approx.distance, approx.bound);
  EXPECT_NEAR(approx.bound, 0.1 * std::sqrt(3.0), 1e-15);
  try {
    approximate_by_simple(xi, std::vector<Point>{real(0.0), real(1.0)}, 0.1);
    FAIL() << "expected a coverage error";
  } catch (const CoverageError& e) {
    EXPECT_EQ(e.atom(), 2u);
  }
}

TEST(Approximation, AdmissibleTwoStage) {
  const auto space = FiniteMeasureSpace::uniform(4);
  const auto xi = line_function(space, {0.0, 0.0, 1.0, 1.0});
  std::vector<ApproximationStage> stages;
  stages.push_back({Partition{1, {0, 0, 0, 0}}, {real(0.5)}});
  stages.push_back({Partition{2, {0, 0, 1, 1}}, {real(0.01), real(0.99)}});
  const auto out = admissible_approximation(xi, stages, 0.1);
  EXPECT_EQ(out.cover_index, 1u);
  EXPECT_EQ(out.index, 1u);
  EXPECT_LT(out.distance, 0.1);
  EXPECT_NEAR(out.distance, 0.01, 1e-14);

  // Never covered.
  std::vector<ApproximationStage> far = {{Partition{1, {0, 0, 0, 0}}, {real(5.0)}}};
  EXPECT_THROW(admissible_approximation(xi, far, 0.1), ApproximationFailure);
  // Covered but the partitions never resolve the two levels.
  std::vector<ApproximationStage> coarse = {{Partition{1, {0, 0, 0, 0}}, {real(0.0), real(1.0)}}};
  try {
    admissible_approximation(xi, coarse, 0.1);
    FAIL() << "expected an approximation failure";
  } catch (const ApproximationFailure& e) {
    EXPECT_NEAR(e.achieved(), std::sqrt(0.5), 1e-12);
  }
}
