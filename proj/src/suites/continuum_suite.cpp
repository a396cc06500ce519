#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "common.hpp"
#include "hadamard/errors.hpp"

namespace hadamard::suites {

namespace {

FiniteMeasureSpace random_space(CounterRng& rng, std::size_t lo, std::size_t hi) {
  const std::size_t atoms = lo + rng.below(hi - lo + 1);
  std::vector<double> weights;
  for (std::size_t k = 0; k < atoms; ++k) weights.push_back(rng.uniform(0.05, 1.0));
  return FiniteMeasureSpace(std::move(weights));
}

SimpleFunction random_function(const FiniteMeasureSpace& space, const SpaceModel& model, CounterRng& rng) {
  std::vector<Point> values;
  for (std::size_t k = 0; k < space.size(); ++k) values.push_back(random_point(model, rng));
  return SimpleFunction(space, model, std::move(values));
}

Partition random_partition(CounterRng& rng, std::size_t atoms, std::size_t cells) {
  Partition p{cells, {}};
  for (std::size_t a = 0; a < atoms; ++a) p.assignment.push_back(rng.below(cells));
  return p;
}

struct ApproxSample {
  double ratio = 0.0;        // d(xi, eta) / (eps sqrt(mu + 1))
  double sharp_ratio = 0.0;  // d(xi, eta) / (eps sqrt(mu))
};

ApproxSample approx_sample(const SpaceModel& model, CounterRng rng) {
  const FiniteMeasureSpace space = random_space(rng, 2, 6);
  const SimpleFunction xi = random_function(space, model, rng);
  const double eps = rng.uniform(0.05, 0.5);
  // Every value has a center within 0.9 eps; a few far centers come first.
  std::vector<Point> centers;
  for (std::size_t k = 0; k < 3; ++k) centers.push_back(random_point(model, rng, 3.0));
  for (const auto& v : xi.values()) {
    const TangentVector dir = random_tangent(model, v, rng);
    centers.push_back(exp_map(model, {v, dir.coords * (rng.uniform(0.0, 0.9) * eps / std::max(dir.norm(), 1e-300))}));
  }
  for (std::size_t i = centers.size(); i > 1; --i) std::swap(centers[i - 1], centers[rng.below(i)]);
  const SimpleApproximation a = approximate_by_simple(xi, centers, eps);
  return {a.distance / a.bound, a.distance / (eps * std::sqrt(space.total()))};
}

struct AdmissibleSample {
  bool ok = false;
  double ratio = 0.0;  // d(xi, eta) / eps
  std::size_t index = 0;
  std::size_t cover_index = 0;
  std::string failure;
};

// Level sets of xi enter the refining sequence one at a time between noise
// subsets; stage samples close in on the levels geometrically.
AdmissibleSample admissible_sample(const SpaceModel& model, CounterRng rng) {
  const std::size_t atoms = 8 + rng.below(8);
  const std::size_t level_count = 2 + rng.below(3);
  const FiniteMeasureSpace space = FiniteMeasureSpace::uniform(atoms, rng.uniform(0.5, 3.0));
  std::vector<Point> levels;
  for (std::size_t l = 0; l < level_count; ++l) levels.push_back(random_point(model, rng));
  std::vector<std::size_t> level_of(atoms);
  for (std::size_t a = 0; a < atoms; ++a) level_of[a] = a < level_count ? a : rng.below(level_count);
  std::vector<Point> values;
  for (std::size_t a = 0; a < atoms; ++a) values.push_back(levels[level_of[a]]);
  const SimpleFunction xi(space, model, std::move(values));
  const double eps = rng.uniform(0.1, 1.0);
  const double eps_prime = eps / std::sqrt(2.0 * space.total());

  std::vector<std::vector<std::size_t>> subsets;
  for (std::size_t l = 0; l < level_count; ++l) {
    std::vector<std::size_t> noise;
    for (std::size_t a = 0; a < atoms; ++a) {
      if (rng.below(2) == 0) noise.push_back(a);
    }
    subsets.push_back(std::move(noise));
    std::vector<std::size_t> level;
    for (std::size_t a = 0; a < atoms; ++a) {
      if (level_of[a] == l) level.push_back(a);
    }
    subsets.push_back(std::move(level));
  }
  const std::vector<Partition> partitions = refining_sequence(space, subsets);

  std::vector<ApproximationStage> stages;
  for (std::size_t m = 0; m < partitions.size(); ++m) {
    ApproximationStage stage{partitions[m], {}};
    const double radius = 4.0 * eps_prime * std::ldexp(1.0, -static_cast<int>(m));
    for (const auto& level : levels) {
      const TangentVector dir = random_tangent(model, level, rng);
      stage.points.push_back(exp_map(model, {level, dir.coords * (radius / std::max(dir.norm(), 1e-300))}));
    }
    stage.points.push_back(random_point(model, rng, 2.0));
    stages.push_back(std::move(stage));
  }

  AdmissibleSample out;
  try {
    const AdmissibleApproximation a = admissible_approximation(xi, stages, eps);
    out.ok = a.distance < eps;
    out.ratio = a.distance / eps;
    out.index = a.index;
    out.cover_index = a.cover_index;
  } catch (const ApproximationFailure& e) {
    out.failure = e.what();
    out.ratio = e.achieved() / eps;
  }
  return out;
}

// min over all witness maps I_1 -> I_2 of delta(P_2, witness o P_1).
double exhaustive_refinement(const FiniteMeasureSpace& space, const Partition& p1, const Partition& p2) {
  std::vector<std::size_t> map(p1.index_size, 0);
  double best = std::numeric_limits<double>::infinity();
  for (;;) {
    best = std::min(best, partition_delta(space, p2, compose(map, p1, p2.index_size)));
    std::size_t i = 0;
    while (i < map.size() && ++map[i] == p2.index_size) map[i++] = 0;
    if (i == map.size()) break;
  }
  return best;
}

// sum_i mu(P_1^-1(i) symmetric-difference P_2^-1(i)) from explicit atom sets.
double brute_delta(const FiniteMeasureSpace& space, const Partition& p1, const Partition& p2) {
  double total = 0.0;
  for (std::size_t i = 0; i < p1.index_size; ++i) {
    for (std::size_t a = 0; a < space.size(); ++a) {
      const bool in1 = p1.assignment[a] == i;
      const bool in2 = p2.assignment[a] == i;
      if (in1 != in2) total += space.weight(a);
    }
  }
  return total;
}

}  // namespace

void run_continuum_approx(const ExperimentConfig& config, SuiteResult& out) {
  const Tolerances& tol = config.tolerances;
  const std::size_t samples = param_count(config, "samples", 1000);
  const std::size_t admissible = param_count(config, "admissible_samples", 200);
  const std::vector<SpaceModel> models = {SpaceModel::spd(2), SpaceModel::euclidean(2)};

  // Snapping to an eps-net.
  {
    auto& table = out.table("simple_approximation", {"model", "samples", "max_ratio", "max_sharp_ratio"});
    for (const auto& model : models) {
      const std::string stream = "continuum/simple/" + model.name();
      const auto rows = parallel::map<ApproxSample>(samples, [&](std::size_t i) {
        return approx_sample(model, config.rng(stream, i));
      });
      double ratio = 0.0;
      double sharp = 0.0;
      for (const auto& r : rows) {
        ratio = std::max(ratio, r.ratio);
        sharp = std::max(sharp, r.sharp_ratio);
      }
      const std::string tag = "[" + model.name() + "]";
      out.check_le("simple_approximation_ratio_max" + tag, ratio, 1.0, tol.l2_metric);
      out.check_le("simple_approximation_sharp_ratio_max" + tag, sharp, 1.0, tol.l2_metric);
      table.row().add(model.name()).add(static_cast<std::uint64_t>(samples)).add(ratio).add(sharp);
      out.add_cases(samples);
    }
  }

  // An uncovered atom is reported by index.
  {
    const SpaceModel model = SpaceModel::euclidean(1);
    Vec far(1);
    far << 10.0;
    const SimpleFunction xi(FiniteMeasureSpace::uniform(2), model, {origin(model), Point::vector(far)});
    const Point centers[] = {origin(model)};
    bool reported = false;
    try {
      approximate_by_simple(xi, centers, 0.5);
    } catch (const CoverageError& e) {
      reported = e.atom() == 1;
    }
    out.check_true("uncovered_atom_reported", reported);
  }

  // Two-stage approximation on randomized exhausting sequences.
  {
    auto& table = out.table("admissible_approximation",
                            {"model", "sample", "ok", "ratio", "cover_index", "index", "failure"});
    for (const auto& model : models) {
      const std::string stream = "continuum/admissible/" + model.name();
      const auto rows = parallel::map<AdmissibleSample>(admissible, [&](std::size_t i) {
        return admissible_sample(model, config.rng(stream, i));
      });
      std::size_t failures = 0;
      double ratio = 0.0;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (!r.ok) ++failures;
        ratio = std::max(ratio, r.ratio);
        table.row()
            .add(model.name())
            .add(static_cast<std::uint64_t>(i))
            .add(r.ok)
            .add(r.ratio)
            .add(static_cast<std::uint64_t>(r.cover_index))
            .add(static_cast<std::uint64_t>(r.index))
            .add(r.failure);
      }
      const std::string tag = "[" + model.name() + "]";
      out.check_le("admissible_failures" + tag, static_cast<double>(failures), 0.0);
      out.check_le("admissible_distance_ratio_max" + tag, ratio, 1.0);
      out.add_cases(admissible);
    }
  }

  // Partition algebra against brute-force oracles.
  {
    std::size_t greedy_suboptimal = 0;
    double delta_error = 0.0;
    std::size_t sequence_errors = 0;
    double merge_error = 0.0;
    double cn_min = std::numeric_limits<double>::infinity();
    double geodesic_error = 0.0;
    const std::size_t count = param_count(config, "partition_samples", 500);
    for (std::size_t i = 0; i < count; ++i) {
      CounterRng rng = config.rng("continuum/partitions", i);
      const FiniteMeasureSpace space = random_space(rng, 3, 7);
      const std::size_t c1 = 1 + rng.below(4);
      const std::size_t c2 = 1 + rng.below(4);
      const Partition p1 = random_partition(rng, space.size(), c1);
      const Partition p2 = random_partition(rng, space.size(), c2);
      const RefinementResult greedy = refines(space, p1, p2, 0.0);
      if (greedy.delta > exhaustive_refinement(space, p1, p2) + 1e-12) ++greedy_suboptimal;

      const Partition q = random_partition(rng, space.size(), c1);
      delta_error = std::max(delta_error, std::abs(partition_delta(space, p1, q) - brute_delta(space, p1, q)));

      std::vector<std::vector<std::size_t>> subsets(1 + rng.below(4));
      for (auto& s : subsets) {
        for (std::size_t a = 0; a < space.size(); ++a) {
          if (rng.below(2) == 0) s.push_back(a);
        }
      }
      const auto seq = refining_sequence(space, subsets);
      for (std::size_t n = 0; n < seq.size(); ++n) {
        for (std::size_t a = 0; a < space.size(); ++a) {
          std::size_t code = 0;
          for (std::size_t j = 0; j <= n; ++j) {
            if (std::find(subsets[j].begin(), subsets[j].end(), a) != subsets[j].end()) code |= std::size_t{1} << j;
          }
          if (seq[n].assignment[a] != code) ++sequence_errors;
        }
        if (n > 0 && refines(space, seq[n], seq[n - 1], 0.0).delta != 0.0) ++sequence_errors;
      }

      // Merging atoms on which both functions are constant preserves distances.
      const SpaceModel model = SpaceModel::spd(2);
      const std::size_t targets = 1 + rng.below(space.size());
      std::vector<std::size_t> merge(space.size());
      for (std::size_t a = 0; a < space.size(); ++a) merge[a] = a < targets ? a : rng.below(targets);
      std::vector<Point> xs;
      std::vector<Point> ys;
      for (std::size_t t = 0; t < targets; ++t) {
        xs.push_back(random_point(model, rng));
        ys.push_back(random_point(model, rng));
      }
      std::vector<Point> xv;
      std::vector<Point> yv;
      for (std::size_t a = 0; a < space.size(); ++a) {
        xv.push_back(xs[merge[a]]);
        yv.push_back(ys[merge[a]]);
      }
      const SimpleFunction xi(space, model, xv);
      const SimpleFunction eta(space, model, yv);
      const double d = l2_distance(xi, eta);
      merge_error = std::max(merge_error, std::abs(l2_distance(merge_atoms(xi, merge, targets),
                                                               merge_atoms(eta, merge, targets)) - d) / (1.0 + d));

      const SimpleFunction zeta = random_function(space, model, rng);
      const double dx = l2_distance(zeta, xi);
      const double dy = l2_distance(zeta, eta);
      cn_min = std::min(cn_min, l2_cn_residual(zeta, xi, eta) / (1.0 + dx * dx + dy * dy));
      const double t = rng.uniform();
      const SimpleFunction g = l2_geodesic(xi, eta, t);
      geodesic_error = std::max(geodesic_error, std::abs(l2_distance(xi, g) - t * d) / (1.0 + d));
    }
    out.check_le("greedy_refinement_suboptimal", static_cast<double>(greedy_suboptimal), 0.0);
    out.check_le("partition_delta_error_max", delta_error, 0.0, tol.l2_metric);
    out.check_le("refining_sequence_errors", static_cast<double>(sequence_errors), 0.0);
    out.check_le("merge_distance_error_max", merge_error, 0.0, tol.l2_metric);
    out.check_ge("l2_cn_residual_min", cn_min, 0.0, tol.cn_residual_rel);
    out.check_le("l2_geodesic_error_max", geodesic_error, 0.0, tol.l2_geodesic);
    out.add_cases(count);
  }
}

}  // namespace hadamard::suites
