#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "common.hpp"
#include "hadamard/errors.hpp"

namespace hadamard::suites {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------- equivariance

// Ratio of extreme eigenvalues of the SPD parts of a point (1 for Euclidean
// parts). Rounding in matrix square roots and logarithms grows with it.
double conditioning(const Point& p) {
  switch (p.kind()) {
    case ModelKind::Euclidean:
      return 1.0;
    case ModelKind::Spd: {
      const Vec ev = linalg::eigh(p.mat()).values;
      return ev[ev.size() - 1] / ev[0];
    }
    case ModelKind::Product: {
      double c = 1.0;
      for (const auto& q : p.parts()) c = std::max(c, conditioning(q));
      return c;
    }
  }
  return 1.0;
}

struct EquivarianceSample {
  double matrix_defect = 0.0;  // phi_* beta_x0 f vs beta_{phi x0} f, matrix path
  double sv_defect = 0.0;      // same through the scalar-vector form
  double isometry_defect = 0.0;
  double orthogonality = 0.0;  // ||D^T D - I||
  double functoriality = 0.0;  // D(phi psi, x) vs D(phi, psi x) D(psi, x)
  double fd_error = 0.0;       // derivative vs central differences
  double conjugation = 0.0;    // l_{psi x}(psi phi psi^-1) - l_x(phi)
  double length_shift_excess = 0.0;  // |l_x - l_y| - 2 d(x, y)
};

EquivarianceSample equivariance_sample(const SpaceModel& model, CounterRng rng, bool matrix_path) {
  EquivarianceSample out;
  const IsometryDescriptor phi = random_isometry(model, rng, 0.6);
  const IsometryDescriptor psi = random_isometry(model, rng, 0.6);
  const TestFunction f = rng.below(4) == 0 ? grid_functions()[rng.below(grid_functions().size())]
                                           : random_family_member(rng);
  const Point x0 = random_point(model, rng);
  const FiberPoint p{random_point(model, rng), rng.uniform(0.0, 2.0)};
  const Point moved = apply(phi, model, x0);

  if (matrix_path) {
    out.matrix_defect = (induced_automorphism(phi, model, x0, f, p) - bott_eval(f, model, moved, p)).norm();
  }
  out.sv_defect = (induced_automorphism_sv(phi, model, x0, f, p) - bott_eval_sv(f, model, moved, p)).norm();

  const Point y = random_point(model, rng);
  out.isometry_defect = std::abs(distance(model, apply(phi, model, x0), apply(phi, model, y)) - distance(model, x0, y));

  // Frame computations at x0 and phi(x0) lose accuracy with their conditioning.
  const double scale = conditioning(x0) * conditioning(moved);
  const Mat d = derivative(phi, model, x0);
  const auto dim = static_cast<Eigen::Index>(model.dim());
  out.orthogonality = (d.transpose() * d - Mat::Identity(dim, dim)).cwiseAbs().maxCoeff() / scale;
  const Mat chain = derivative(phi, model, apply(psi, model, x0)) * derivative(psi, model, x0);
  out.functoriality = std::max((derivative(compose_simplified(phi, psi), model, x0) - chain).cwiseAbs().maxCoeff(),
                               (derivative(compose(phi, psi), model, x0) - chain).cwiseAbs().maxCoeff()) /
                      (scale * conditioning(apply(psi, model, x0)));

  const double h = 1e-5;
  for (Eigen::Index j = 0; j < dim; ++j) {
    Vec e = Vec::Zero(dim);
    e[j] = h;
    const Point plus = apply(phi, model, exp_map(model, {x0, e}));
    const Point minus = apply(phi, model, exp_map(model, {x0, -e}));
    const Vec fd = (log_map(model, moved, plus).coords - log_map(model, moved, minus).coords) / (2.0 * h);
    out.fd_error = std::max(out.fd_error, (fd - d.col(j)).cwiseAbs().maxCoeff() / scale);
  }

  const IsometryDescriptor conj = compose(psi, compose(phi, inverse(psi)));
  const double lx = length_function(model, x0, phi);
  out.conjugation = std::abs(length_function(model, apply(psi, model, x0), conj) - lx) /
                    (scale * conditioning(apply(psi, model, x0)));
  out.length_shift_excess = std::abs(length_function(model, y, phi) - lx) - 2.0 * distance(model, x0, y);
  return out;
}

// ------------------------------------------------------------------- rescaling

// Lipschitz constant of the piecewise-linear interpolant on a fine grid; a
// lower bound for the true constant.
double lipschitz_estimate(const TestFunction& f) {
  const TestFunction g = f.family() == Family::Grid ? f : TestFunction::sampled(f, 1e-4 * f.width(), 12.0 * f.width());
  const auto& v = g.samples();
  double best = 0.0;
  for (std::size_t i = 1; i < v.size(); ++i) best = std::max(best, std::abs(v[i] - v[i - 1]) / g.step());
  return best;
}

// Grid oracle of s.f whose nodes include every kink of the closed forms.
TestFunction grid_oracle(const TestFunction& f, double s) {
  const double w = f.width() * s;
  return TestFunction::sampled(f.rescale(s), 1e-3 * w, 12.0 * w);
}

// ----------------------------------------------------------------- deformation

SimpleFunction random_interval_function(const SpaceModel& model, CounterRng& rng, std::size_t atoms) {
  std::vector<double> cuts{0.0, 1.0};
  while (cuts.size() < atoms + 1) {
    const double c = rng.uniform(0.02, 0.98);
    if (std::none_of(cuts.begin(), cuts.end(), [&](double b) { return std::abs(b - c) < 1e-3; })) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  const FiniteMeasureSpace space = FiniteMeasureSpace::unit_interval(cuts);
  std::vector<Point> values;
  for (std::size_t k = 0; k < space.size(); ++k) values.push_back(random_point(model, rng));
  return SimpleFunction(space, model, std::move(values));
}

struct DeformationSample {
  std::size_t homomorphism_failures = 0;
  std::size_t endpoint_failures = 0;
  double integral_error = 0.0;
  double constant_error = 0.0;
};

DeformationSample deformation_sample(const SpaceModel& model, CounterRng rng) {
  DeformationSample out;
  const IsometryDescriptor phi = random_isometry(model, rng, 0.6);
  const IsometryDescriptor psi = random_isometry(model, rng, 0.6);
  const SimpleFunction xi = random_interval_function(model, rng, 2 + rng.below(6));
  const IsometryDescriptor both = compose(phi, psi);

  for (int k = 0; k <= 10; ++k) {
    const double t = k / 10.0;
    const SimpleFunction lhs = apply_deformed(deform(both, t), xi);
    const SimpleFunction rhs = apply_deformed(deform(phi, t), apply_deformed(deform(psi, t), xi));
    if (!(lhs == rhs)) ++out.homomorphism_failures;

    const double cut[] = {t};
    const auto [finer, parent] = xi.space().refined_at(cut);
    const SimpleFunction xr = xi.refined(finer, parent);
    const double direct = l2_distance(xr, apply_deformed(deform(phi, t), xi));
    out.integral_error = std::max(out.integral_error, std::abs(deformed_length_integral(phi, xi, t) - direct));
  }
  if (!(apply_deformed(deform(phi, 0.0), xi) == xi)) ++out.endpoint_failures;
  if (!(apply_deformed(deform(phi, 1.0), xi) == apply(continuum_lift(phi, xi.space()), xi))) ++out.endpoint_failures;

  const SimpleFunction flat = SimpleFunction::constant(xi.space(), model, xi.value(0));
  const double t = rng.uniform();
  out.constant_error =
      std::abs(deformed_length_integral(phi, flat, t) - std::sqrt(t) * length_function(model, xi.value(0), phi));
  return out;
}

}  // namespace

void run_equivariance(const ExperimentConfig& config, SuiteResult& out) {
  const Tolerances& tol = config.tolerances;
  const std::size_t samples = param_count(config, "samples", 1000);
  const SpaceModel spd2 = SpaceModel::spd(2);
  const std::vector<SpaceModel> models = param_models(
      config, "models",
      {spd2, SpaceModel::euclidean(3),
       SpaceModel::product({{spd2, 0.5}, {SpaceModel::euclidean(1), 0.5}}), SpaceModel::spd(3, true)});

  auto& table = out.table("equivariance", {"model", "samples", "max_matrix_defect", "max_sv_defect",
                                           "max_isometry_defect", "max_orthogonality", "max_functoriality",
                                           "max_fd_error", "max_conjugation", "max_length_shift_excess"});
  for (const SpaceModel& model : models) {
    const std::string stream = "equivariance/" + model.name();
    const bool matrix_path = model.dim() + 1 <= 8;
    const auto rows = parallel::map<EquivarianceSample>(samples, [&](std::size_t i) {
      return equivariance_sample(model, config.rng(stream, i), matrix_path);
    });
    EquivarianceSample w;
    w.length_shift_excess = kNegInf;
    for (const auto& r : rows) {
      w.matrix_defect = std::max(w.matrix_defect, r.matrix_defect);
      w.sv_defect = std::max(w.sv_defect, r.sv_defect);
      w.isometry_defect = std::max(w.isometry_defect, r.isometry_defect);
      w.orthogonality = std::max(w.orthogonality, r.orthogonality);
      w.functoriality = std::max(w.functoriality, r.functoriality);
      w.fd_error = std::max(w.fd_error, r.fd_error);
      w.conjugation = std::max(w.conjugation, r.conjugation);
      w.length_shift_excess = std::max(w.length_shift_excess, r.length_shift_excess);
    }
    const std::string tag = "[" + model.name() + "]";
    if (matrix_path) out.check_le("equivariance_defect_max" + tag, w.matrix_defect, 0.0, tol.equivariance);
    out.check_le("equivariance_sv_defect_max" + tag, w.sv_defect, 0.0, tol.equivariance);
    out.check_le("isometry_defect_max" + tag, w.isometry_defect, 0.0, tol.isometry_defect);
    out.check_le("derivative_orthogonality_max" + tag, w.orthogonality, 0.0, tol.derivative_orthogonality);
    out.check_le("derivative_functoriality_max" + tag, w.functoriality, 0.0, tol.derivative_orthogonality);
    out.check_le("derivative_fd_error_max" + tag, w.fd_error, 0.0, tol.derivative_fd);
    out.check_le("length_conjugation_max" + tag, w.conjugation, 0.0, tol.isometry_defect);
    out.check_le("length_base_point_excess_max" + tag, w.length_shift_excess, 0.0, tol.isometry_defect);
    table.row()
        .add(model.name())
        .add(static_cast<std::uint64_t>(samples))
        .add(w.matrix_defect)
        .add(w.sv_defect)
        .add(w.isometry_defect)
        .add(w.orthogonality)
        .add(w.functoriality)
        .add(w.fd_error)
        .add(w.conjugation)
        .add(w.length_shift_excess);
    out.add_cases(samples);
  }
}

void run_rescaling(const ExperimentConfig& config, SuiteResult& out) {
  const Tolerances& tol = config.tolerances;
  const std::vector<double> scales{0.25, 0.5, 2.0, 3.0, 10.0};
  const std::vector<double> radii{0.001, 0.01, 0.1, 0.5, 1.0, 2.0, 5.0};

  std::vector<TestFunction> family;
  for (const double a : {1.0, -0.7}) {
    for (const double w : {0.5, 1.0, 2.5}) {
      family.push_back(TestFunction::gaussian(a, w));
      family.push_back(TestFunction::hat(a, w));
      family.push_back(TestFunction::odd_hat(a, w));
      family.push_back(TestFunction::gaussian_times_t(a, w));
    }
  }
  CounterRng rng = config.rng("rescaling/family", 0);
  for (std::size_t k = 0; k < param_count(config, "random_functions", 16); ++k) family.push_back(random_family_member(rng));

  struct Case {
    std::size_t function;
    double s;
  };
  std::vector<Case> cases;
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (const double s : scales) cases.push_back({i, s});
  }

  struct Row {
    double closed_error = 0.0;  // |Omega_r(s.f) - Omega_{r/s}(f)| and the Theta analogue, scaled
    double grid_error = 0.0;    // closed form vs piecewise-linear oracle of s.f
  };
  const auto rows = parallel::map<Row>(cases.size(), [&](std::size_t c) {
    const TestFunction& f = family[cases[c].function];
    const double s = cases[c].s;
    const TestFunction fs = f.rescale(s);
    const TestFunction oracle = grid_oracle(f, s);
    Row row;
    for (const double r : radii) {
      const double om = oscillation(fs, r);
      const double th = mean_functional(fs, r);
      row.closed_error = std::max(row.closed_error, std::abs(om - oscillation(f, r / s)) / (1.0 + std::abs(om)));
      row.closed_error = std::max(row.closed_error, std::abs(th - mean_functional(f, r / s)) / (1.0 + std::abs(th)));
      row.grid_error = std::max(row.grid_error, std::abs(om - oscillation(oracle, r)));
      row.grid_error = std::max(row.grid_error, std::abs(th - mean_functional(oracle, r)));
    }
    return row;
  });

  auto& table = out.table("rescaling", {"function", "s", "closed_form_error", "grid_error"});
  double closed = 0.0;
  double grid = 0.0;
  for (std::size_t c = 0; c < cases.size(); ++c) {
    closed = std::max(closed, rows[c].closed_error);
    grid = std::max(grid, rows[c].grid_error);
    table.row().add(family[cases[c].function].name()).add(cases[c].s).add(rows[c].closed_error).add(rows[c].grid_error);
  }
  out.check_le("rescale_closed_form_error_max", closed, 0.0, tol.rescale_exact);
  out.check_le("rescale_grid_oracle_error_max", grid, 0.0, tol.rescale_grid);
  out.add_cases(cases.size() * radii.size());

  // Grid-represented functions rescale by stretching the step.
  {
    double err = 0.0;
    for (const auto& f : grid_functions()) {
      for (const double s : scales) {
        const TestFunction fs = f.rescale(s);
        for (const double r : radii) {
          err = std::max(err, std::abs(oscillation(fs, r) - oscillation(f, r / s)));
          err = std::max(err, std::abs(mean_functional(fs, r) - mean_functional(f, r / s)));
        }
      }
    }
    out.check_le("rescale_grid_family_error_max", err, 0.0, tol.rescale_exact);
  }

  // Rescaling preserves the sup norm.
  {
    double err = 0.0;
    for (const auto& f : family) {
      for (const double s : scales) err = std::max(err, std::abs(f.rescale(s).sup_norm() - f.sup_norm()));
    }
    out.check_le("rescale_sup_norm_error_max", err, 0.0, tol.rescale_exact);
  }

  // Hat of width 1 stretched by 2: Omega_1 = 1/2.
  out.check_le("hat_rescaled_oscillation_error",
               std::abs(oscillation(TestFunction::hat().rescale(2.0), 1.0) - 0.5), 0.0, tol.rescale_exact);

  // Omega_r and Theta_r vanish linearly as r -> 0: both are at most L r.
  auto& lim = out.table("small_radius", {"function", "r", "omega", "theta", "lipschitz_r"});
  std::vector<TestFunction> probes(family.begin(), family.begin() + 12);
  probes.insert(probes.end(), grid_functions().begin(), grid_functions().end());
  double excess = kNegInf;
  std::size_t non_monotone = 0;
  for (const auto& f : probes) {
    const double lip = 1.001 * lipschitz_estimate(f);
    double previous = std::numeric_limits<double>::infinity();
    for (const double r : {1.0, 0.1, 0.01, 0.001}) {
      const double om = oscillation(f, r);
      const double th = mean_functional(f, r);
      excess = std::max({excess, om - lip * r, th - lip * r});
      if (om > previous + tol.rescale_exact) ++non_monotone;
      previous = om;
      lim.row().add(f.name()).add(r).add(om).add(th).add(lip * r);
    }
  }
  out.check_le("small_radius_lipschitz_excess_max", excess, 0.0, tol.rescale_grid);
  out.check_le("oscillation_non_monotone_count", static_cast<double>(non_monotone), 0.0);
  out.add_cases(probes.size() * 4);
}

void run_deformation(const ExperimentConfig& config, SuiteResult& out) {
  const Tolerances& tol = config.tolerances;
  const std::size_t pairs = param_count(config, "pairs", 100);
  const SpaceModel model = SpaceModel::spd(2);

  const auto rows = parallel::map<DeformationSample>(pairs, [&](std::size_t i) {
    return deformation_sample(model, config.rng("deformation/pairs", i));
  });
  std::size_t hom = 0;
  std::size_t ends = 0;
  double integral = 0.0;
  double constant = 0.0;
  auto& table = out.table("deformation", {"pair", "homomorphism_failures", "endpoint_failures", "integral_error"});
  for (std::size_t i = 0; i < rows.size(); ++i) {
    hom += rows[i].homomorphism_failures;
    ends += rows[i].endpoint_failures;
    integral = std::max(integral, rows[i].integral_error);
    constant = std::max(constant, rows[i].constant_error);
    table.row()
        .add(static_cast<std::uint64_t>(i))
        .add(static_cast<std::uint64_t>(rows[i].homomorphism_failures))
        .add(static_cast<std::uint64_t>(rows[i].endpoint_failures))
        .add(rows[i].integral_error);
  }
  out.check_le("homomorphism_law_failures", static_cast<double>(hom), 0.0);
  out.check_le("endpoint_failures", static_cast<double>(ends), 0.0);
  out.check_le("length_integral_error_max", integral, 0.0, tol.length_formula);
  out.check_le("constant_length_integral_error_max", constant, 0.0, tol.length_formula);
  out.add_cases(pairs * 11);

  // Asymptotic invariance: congruence moving x0 by exactly 1.
  CounterRng rng = config.rng("deformation/invariance", 0);
  const Point x0 = random_point(model, rng, 0.5);
  const double a = 0.5 / std::numbers::sqrt2;
  Mat dial = Mat::Zero(2, 2);
  dial(0, 0) = std::exp(a);
  dial(1, 1) = std::exp(-a);
  const Mat root = linalg::sym_sqrt(x0.mat());
  const Mat t = root * random_orthogonal(rng, 2) * dial * linalg::sym_inv_sqrt(x0.mat());
  const IsometryDescriptor phi = IsometryDescriptor::spd_congruence(t / std::sqrt(std::abs(t.determinant())));

  const std::size_t atoms = 10;
  const FiniteMeasureSpace space = FiniteMeasureSpace::unit_interval(atoms);
  std::vector<double> cuts;
  for (std::size_t k = 0; k <= atoms; ++k) cuts.push_back(static_cast<double>(k) / atoms);
  std::vector<ContinuumFiber> fibers;
  for (std::size_t k = 0; k < param_count(config, "fibers", 24); ++k) {
    std::vector<Point> values;
    for (std::size_t j = 0; j < atoms; ++j) values.push_back(exp_map(model, random_tangent(model, x0, rng, 0.7)));
    fibers.push_back({SimpleFunction(space, model, std::move(values)), rng.uniform(0.0, 1.5)});
  }
  const std::vector<double> s_values{1.0, 3.0, 10.0, 30.0, 100.0};
  const InvarianceProfile profile = asymptotic_invariance_profile(phi, model, x0, TestFunction::gaussian(), s_values,
                                                                  cuts, space, fibers, tol);

  auto& inv = out.table("asymptotic_invariance", {"s", "measured", "bound", "pass"});
  double excess = kNegInf;
  bool decreasing = true;
  for (std::size_t i = 0; i < profile.rows.size(); ++i) {
    const auto& r = profile.rows[i];
    excess = std::max(excess, r.measured - r.bound);
    if (i > 0 && !(r.bound < profile.rows[i - 1].bound)) decreasing = false;
    inv.row().add(r.s).add(r.measured).add(r.bound).add(r.pass);
  }
  out.check_le("invariance_displacement_error", std::abs(distance(model, x0, apply(phi, model, x0)) - 1.0), 0.0,
               tol.isometry_defect);
  out.check_le("invariance_measured_excess_max", excess, 0.0, tol.bott_bound);
  out.check_le("invariance_bound_ratio", profile.rows.back().bound / profile.rows.front().bound, 0.2);
  out.check_true("invariance_bound_decreasing", decreasing);
  out.check_true("invariance_decaying", profile.decaying);
  out.add_cases(s_values.size() * cuts.size() * fibers.size());
}

void run_properness(const ExperimentConfig& config, SuiteResult& out) {
  const Tolerances& tol = config.tolerances;
  const SpaceModel model = SpaceModel::spd(2);
  const Point base = origin(model);
  CounterRng rng = config.rng("properness/probes", 0);
  const std::vector<Point> probes{base, random_point(model, rng), random_point(model, rng)};
  const double support = param_real(config, "support_radius", 1.0);

  auto& table = out.table("properness", {"group", "k", "words", "min_length", "max_length",
                                         "overlap_free_fraction", "max_overlap"});
  auto record = [&](const std::string& group, const PropernessProfile& p) {
    for (const auto& r : p.rows) {
      table.row()
          .add(group)
          .add(static_cast<std::uint64_t>(r.k))
          .add(static_cast<std::uint64_t>(r.words))
          .add(r.min_length)
          .add(r.max_length)
          .add(r.overlap_free_fraction)
          .add(r.max_overlap);
    }
    out.add_cases(p.elements);
  };

  // Trivial group: only the identity.
  {
    const IsometryDescriptor id[] = {IsometryDescriptor::identity()};
    const PropernessProfile p = properness_profile(id, model, base, 4, support, probes);
    record("trivial", p);
    out.check_le("trivial_group_elements", static_cast<double>(p.elements), 1.0);
  }

  // Cyclic group of the cat map: the k-sphere is {A^k, A^-k}, each moving I
  // by 2k sqrt2 log((3+sqrt5)/2).
  {
    Mat a(2, 2);
    a << 2.0, 1.0, 1.0, 1.0;
    const IsometryDescriptor gen[] = {IsometryDescriptor::spd_congruence(a)};
    const std::size_t radius = param_count(config, "cat_radius", 4);
    const PropernessProfile p = properness_profile(gen, model, base, radius, support, probes);
    record("cat", p);
    const double unit = 2.0 * std::numbers::sqrt2 * std::log((3.0 + std::sqrt(5.0)) / 2.0);
    double err = 0.0;
    bool sizes = true;
    for (const auto& r : p.rows) {
      const double expected = unit * static_cast<double>(r.k);
      err = std::max({err, std::abs(r.min_length - expected) / (1.0 + expected),
                      std::abs(r.max_length - expected) / (1.0 + expected)});
      if (r.k > 0 && r.words != 2) sizes = false;
    }
    out.check_le("cat_length_growth_error_max", err, 0.0, tol.lambda_exact);
    out.check_true("cat_sphere_sizes", sizes);
    out.check_le("cat_far_overlap", p.rows.back().max_overlap, 0.0, tol.lambda_exact);
  }

  // SL(2,Z) generated by S and T: S fixes I, longer words move it away.
  {
    Mat s(2, 2);
    s << 0.0, -1.0, 1.0, 0.0;
    Mat t(2, 2);
    t << 1.0, 1.0, 0.0, 1.0;
    const IsometryDescriptor gens[] = {IsometryDescriptor::spd_congruence(s), IsometryDescriptor::spd_congruence(t)};
    const std::size_t radius = param_count(config, "modular_radius", 8);
    const PropernessProfile p = properness_profile(gens, model, base, radius, support, probes);
    record("sl2z", p);
    out.check_le("sl2z_min_length_k1", p.rows.at(1).min_length, 0.0, tol.isometry_defect);
    out.check_ge("sl2z_min_length_k4_over_k1", p.rows.at(4).min_length - p.rows.at(1).min_length, 0.0);
    out.check_ge("sl2z_min_length_k4", p.rows.at(4).min_length, 1e-3);
  }

  // Lengths of continuum lifts: l_xi(phi^Y) = (sum_atoms mu l_{xi(a)}(phi)^2)^{1/2}.
  {
    double constant_err = 0.0;
    double two_atom_err = 0.0;
    double weighted_err = 0.0;
    for (std::size_t i = 0; i < param_count(config, "lift_samples", 200); ++i) {
      CounterRng r = config.rng("properness/lift", i);
      const IsometryDescriptor phi = random_isometry(model, r, 0.8);
      const Point x = random_point(model, r);
      const Point y = random_point(model, r);
      const double lx = length_function(model, x, phi);
      const double ly = length_function(model, y, phi);

      const FiniteMeasureSpace one = FiniteMeasureSpace::uniform(1);
      constant_err = std::max(constant_err, std::abs(length_function(SimpleFunction::constant(one, model, x),
                                                                     continuum_lift(phi, one)) - lx));
      const FiniteMeasureSpace halves = FiniteMeasureSpace::uniform(2);
      const SimpleFunction xy(halves, model, {x, y});
      two_atom_err = std::max(two_atom_err, std::abs(length_function(xy, continuum_lift(phi, halves)) -
                                                     std::sqrt(0.5 * lx * lx + 0.5 * ly * ly)));

      std::vector<double> weights;
      std::vector<Point> values;
      double sum = 0.0;
      for (std::size_t k = 0; k < 2 + r.below(5); ++k) {
        weights.push_back(r.uniform(0.1, 1.0));
        values.push_back(random_point(model, r));
        const double l = length_function(model, values.back(), phi);
        sum += weights.back() * l * l;
      }
      const FiniteMeasureSpace space(weights);
      const SimpleFunction xi(space, model, values);
      weighted_err = std::max(weighted_err, std::abs(length_function(xi, continuum_lift(phi, space)) - std::sqrt(sum)));
    }
    out.check_le("lift_constant_length_error_max", constant_err, 0.0, tol.spd_exact);
    out.check_le("lift_two_atom_length_error_max", two_atom_err, 0.0, tol.spd_exact);
    out.check_le("lift_weighted_length_error_max", weighted_err, 0.0, tol.length_formula);
  }
}

}  // namespace hadamard::suites
