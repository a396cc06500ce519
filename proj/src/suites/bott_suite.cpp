#include <algorithm>
#include <cmath>
#include <limits>

#include "common.hpp"

namespace hadamard::suites {

namespace {

struct LipschitzSample {
  double excess = 0.0;        // ||C_x0 - C_x1|| - d(x0, x1)
  double norm_defect = 0.0;   // | ||C_x0(x,t)|| - sqrt(d(x,x0)^2 + t^2) |
};

LipschitzSample lipschitz_sample(const SpaceModel& model, CounterRng rng) {
  const Point x0 = random_point(model, rng);
  const Point x1 = random_point(model, rng);
  const FiberPoint p{random_point(model, rng), rng.uniform(0.0, 2.0)};
  const CliffordElement c0 = clifford_operator(model, x0, p);
  const CliffordElement c1 = clifford_operator(model, x1, p);
  LipschitzSample out;
  out.excess = (c0 - c1).norm() - distance(model, x0, x1);
  out.norm_defect = std::abs(c0.norm() - std::hypot(distance(model, p.x, x0), p.t));
  return out;
}

struct BoundSample {
  std::string model;
  std::string function;
  double r = 0.0;
  BoundReport report;
  double matrix_path_error = 0.0;  // scalar-vector vs matrix evaluation
};

// Fibers gather near both base points, where the two Bott elements differ most.
BoundSample bound_sample(const std::vector<SpaceModel>& models, CounterRng rng, std::size_t fibers,
                         const Tolerances& tol) {
  const SpaceModel& model = models[rng.below(models.size())];
  const auto& grids = grid_functions();
  const TestFunction f = rng.below(5) == 0 ? grids[rng.below(grids.size())] : random_family_member(rng);
  const Point x0 = random_point(model, rng);
  const double r = rng.uniform(0.0, 2.5);
  const TangentVector dir = random_tangent(model, x0, rng);
  const Point x1 = exp_map(model, {x0, dir.coords * (r / std::max(dir.norm(), 1e-300))});

  std::vector<FiberPoint> samples;
  for (std::size_t k = 0; k < fibers; ++k) {
    const Point& centre = k % 2 == 0 ? x0 : x1;
    const TangentVector v = random_tangent(model, centre, rng, rng.uniform(0.0, 1.5));
    samples.push_back({exp_map(model, v), rng.uniform(0.0, 2.0)});
  }
  BoundSample out{model.name(), f.name(), distance(model, x0, x1),
                  base_point_bound_check(f, model, x0, x1, samples, tol), 0.0};
  if (model.dim() + 1 <= 6) {
    for (const auto& p : samples) {
      const double sv = (bott_eval_sv(f, model, x0, p) - bott_eval_sv(f, model, x1, p)).norm();
      const double matrix = (bott_eval(f, model, x0, p) - bott_eval(f, model, x1, p)).norm();
      out.matrix_path_error = std::max(out.matrix_path_error, std::abs(sv - matrix));
    }
  }
  return out;
}

}  // namespace

void run_bott_bound(const ExperimentConfig& config, SuiteResult& out) {
  const Tolerances& tol = config.tolerances;
  const std::size_t samples = param_count(config, "samples", 1000);
  const std::size_t fibers = std::max<std::size_t>(1, param_count(config, "fibers_per_sample", 4));
  const std::vector<SpaceModel> models =
      param_models(config, "models", {SpaceModel::euclidean(1), SpaceModel::euclidean(3), SpaceModel::spd(2)});

  // Lipschitz dependence of the Clifford operator on the base point.
  {
    auto& table = out.table("clifford_lipschitz", {"model", "samples", "max_excess", "max_norm_defect"});
    for (const SpaceModel& model : {SpaceModel::spd(2), SpaceModel::euclidean(3)}) {
      const std::string stream = "bott/lipschitz/" + model.name();
      const auto rows = parallel::map<LipschitzSample>(samples, [&](std::size_t i) {
        return lipschitz_sample(model, config.rng(stream, i));
      });
      double excess = -std::numeric_limits<double>::infinity();
      double norm_defect = 0.0;
      for (const auto& r : rows) {
        excess = std::max(excess, r.excess);
        norm_defect = std::max(norm_defect, r.norm_defect);
      }
      const std::string tag = "[" + model.name() + "]";
      out.check_le("clifford_lipschitz_excess_max" + tag, excess, 0.0, tol.base_point_lipschitz);
      out.check_le("clifford_norm_defect_max" + tag, norm_defect, 0.0, tol.clifford_relation * 100.0);
      table.row().add(model.name()).add(static_cast<std::uint64_t>(samples)).add(excess).add(norm_defect);
      out.add_cases(samples);
    }
  }

  // Omega/Theta base-point bound.
  const auto rows = parallel::map<BoundSample>(samples, [&](std::size_t i) {
    return bound_sample(models, config.rng("bott/bound", i), fibers, tol);
  });
  auto& table = out.table("bott_bound", {"sample", "model", "function", "r", "measured", "bound", "ratio", "pass"});
  std::size_t violations = 0;
  double max_excess = -std::numeric_limits<double>::infinity();
  double max_ratio = 0.0;
  double matrix_error = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    violations += r.report.violations;
    max_excess = std::max(max_excess, r.report.max_excess);
    max_ratio = std::max(max_ratio, r.report.max_ratio);
    matrix_error = std::max(matrix_error, r.matrix_path_error);
    const double bound = r.report.rows.front().bound;
    table.row()
        .add(static_cast<std::uint64_t>(i))
        .add(r.model)
        .add(r.function)
        .add(r.r)
        .add(r.report.max_measured)
        .add(bound)
        .add(bound > 0.0 ? r.report.max_measured / bound : 0.0)
        .add(r.report.violations == 0);
  }
  out.check_le("base_point_bound_violations", static_cast<double>(violations), 0.0);
  out.check_le("base_point_bound_excess_max", max_excess, 0.0, tol.bott_bound);
  out.check_le("bott_matrix_path_error_max", matrix_error, 0.0, tol.homomorphism);
  out.add_cases(samples * fibers);

  // Continuity in the base point: the sampled difference shrinks with d(x0, x1).
  {
    auto& cont = out.table("base_point_continuity", {"fraction", "r", "measured", "bound"});
    const SpaceModel model = SpaceModel::spd(2);
    CounterRng rng = config.rng("bott/continuity", 0);
    const Point x0 = random_point(model, rng);
    const Point x1 = random_point(model, rng);
    std::vector<FiberPoint> fibers_near;
    for (int k = 0; k < 64; ++k) {
      fibers_near.push_back({exp_map(model, random_tangent(model, x0, rng, 0.5)), rng.uniform(0.0, 1.0)});
    }
    const TestFunction f = TestFunction::gaussian_times_t(1.0, 0.8);
    double previous = std::numeric_limits<double>::infinity();
    bool monotone = true;
    double last = 0.0;
    for (int j = 0; j <= 10; ++j) {
      const double fraction = std::ldexp(1.0, -j);
      const Point xj = geodesic(model, x0, x1, fraction);
      const BoundReport rep = base_point_bound_check(f, model, x0, xj, fibers_near, tol);
      cont.row().add(fraction).add(distance(model, x0, xj)).add(rep.max_measured).add(rep.rows.front().bound);
      if (rep.max_measured > previous + tol.bott_bound) monotone = false;
      previous = rep.max_measured;
      last = rep.max_measured;
    }
    out.check_true("base_point_continuity_monotone", monotone);
    out.check_le("base_point_continuity_last", last, 0.0, 1e-2);
  }

  // Omega_r <= 2 ||f|| and Theta_r <= ||f|| on a radius sweep.
  {
    double omega_excess = -std::numeric_limits<double>::infinity();
    double theta_excess = -std::numeric_limits<double>::infinity();
    std::vector<TestFunction> fs = grid_functions();
    CounterRng rng = config.rng("bott/functionals", 0);
    for (int k = 0; k < 64; ++k) fs.push_back(random_family_member(rng));
    for (const auto& f : fs) {
      for (const double r : {1e-3, 1e-2, 0.1, 0.5, 1.0, 2.0, 5.0, 20.0}) {
        omega_excess = std::max(omega_excess, oscillation(f, r) - 2.0 * f.sup_norm());
        theta_excess = std::max(theta_excess, mean_functional(f, r) - f.sup_norm());
      }
    }
    out.check_le("oscillation_over_twice_sup_excess", omega_excess, 0.0, tol.homomorphism);
    out.check_le("mean_functional_over_sup_excess", theta_excess, 0.0, tol.homomorphism);
    out.add_cases(fs.size());
  }
}

}  // namespace hadamard::suites
