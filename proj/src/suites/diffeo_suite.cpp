#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "common.hpp"

namespace hadamard::suites {

namespace {

IntMat int_matrix(std::size_t n, std::initializer_list<long long> entries) {
  IntMat a(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  auto it = entries.begin();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) a(i, j) = *it++;
  }
  return a;
}

TorusDiffeo cat_map() { return TorusDiffeo::linear(int_matrix(2, {2, 1, 1, 1})); }

TorusDiffeo random_linear(CounterRng& rng, std::size_t n) {
  if (n == 2) {
    switch (rng.below(4)) {
      case 0:
        return cat_map();
      case 1:
        return TorusDiffeo::linear(int_matrix(2, {1, 1, 0, 1}));
      case 2:
        return TorusDiffeo::linear(int_matrix(2, {1, 0, 1, 1}));
      default:
        return TorusDiffeo::linear(int_matrix(2, {0, -1, 1, 0}));
    }
  }
  // Elementary transvection I + E_ij.
  IntMat a = IntMat::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  const auto i = static_cast<Eigen::Index>(rng.below(n));
  auto j = static_cast<Eigen::Index>(rng.below(n - 1));
  if (j >= i) ++j;
  a(i, j) = 1;
  return TorusDiffeo::linear(a);
}

TorusDiffeo random_shear(CounterRng& rng, std::size_t n) {
  const std::size_t target = rng.below(n);
  std::size_t source = rng.below(n - 1);
  if (source >= target) ++source;
  return TorusDiffeo::shear(n, target, source, rng.uniform(-0.3, 0.3), 1 + static_cast<int>(rng.below(2)),
                            rng.uniform(0.0, 2.0 * std::numbers::pi));
}

// Two or three parts; shears only when `linear_parts` is off.
TorusDiffeo random_composite(CounterRng& rng, std::size_t n, bool linear_parts) {
  std::vector<TorusDiffeo> parts;
  const std::size_t count = 2 + rng.below(2);
  for (std::size_t k = 0; k < count; ++k) {
    parts.push_back(linear_parts && rng.below(3) == 0 ? random_linear(rng, n) : random_shear(rng, n));
  }
  return TorusDiffeo::composite(std::move(parts));
}

struct CompositeSample {
  double lambda_plus = 0.0;
  double lambda_plus_inverse = 0.0;
  double subadditivity_excess = 0.0;  // lambda(phi psi) - lambda(phi) - lambda(psi)
  double symmetry = 0.0;              // |lambda(phi) - lambda(phi^-1)|, first samples only
  double det_defect = 0.0;
};

CompositeSample composite_sample(CounterRng rng, std::size_t n, bool linear_parts, std::size_t g, bool extra) {
  const TorusDiffeo phi = random_composite(rng, n, linear_parts);
  const TorusDiffeo psi = random_composite(rng, n, linear_parts);
  const TorusDiffeo both = compose(phi, psi);
  CompositeSample out;
  out.lambda_plus = lambda_plus(phi, g).value;
  out.lambda_plus_inverse = lambda_plus(phi.inverse(), g).value;
  const double lphi = std::max(out.lambda_plus, out.lambda_plus_inverse);
  const double lpsi = std::max(lambda_plus(psi, g).value, lambda_plus(psi.inverse(), g).value);
  const double lboth = std::max(lambda_plus(both, g).value, lambda_plus(both.inverse(), g).value);
  out.subadditivity_excess = lboth - lphi - lpsi;
  if (extra) {
    out.symmetry = std::abs(lambda(phi, 16) - lambda(phi.inverse(), 16));
    out.det_defect = jacobian_field(phi, 16).max_det_defect();
  }
  return out;
}

// sum of squared log singular values, the HS norm of log(T T^T) / 2.
double hs_log(const Mat& t) { return linalg::hs_norm(linalg::sym_log(t * t.transpose())); }

}  // namespace

void run_diffeo_length(const ExperimentConfig& config, SuiteResult& out) {
  const Tolerances& tol = config.tolerances;
  const double cat_value = std::log((3.0 + std::sqrt(5.0)) / 2.0);

  // Cat map: constant Jacobian, so the quadrature is exact.
  {
    const LambdaEstimate est = lambda_plus(cat_map(), default_resolution(2));
    out.check_le("cat_lambda_plus_error", std::abs(est.value - cat_value), 0.0, tol.lambda_exact);
    const DiscretenessProfile p = geometric_discreteness_profile(cat_map(), 10, default_resolution(2));
    double err = 0.0;
    auto& table = out.table("discreteness", {"generator", "k", "lambda", "expected"});
    for (std::size_t k = 0; k < p.lambdas.size(); ++k) {
      const double expected = static_cast<double>(k + 1) * cat_value;
      err = std::max(err, std::abs(p.lambdas[k] - expected));
      table.row().add("cat").add(static_cast<std::uint64_t>(k + 1)).add(p.lambdas[k]).add(expected);
    }
    out.check_le("cat_power_linearity_error_max", err, 0.0, tol.lambda_exact);
    out.check_true("cat_verdict_discrete", p.discrete);

    const TorusDiffeo rotation = TorusDiffeo::linear(int_matrix(2, {0, -1, 1, 0}));
    const DiscretenessProfile q = geometric_discreteness_profile(rotation, 10, default_resolution(2));
    for (std::size_t k = 0; k < q.lambdas.size(); ++k) {
      table.row().add("rotation").add(static_cast<std::uint64_t>(k + 1)).add(q.lambdas[k]).add(0.0);
    }
    out.check_true("rotation_verdict_not_discrete", !q.discrete);
    out.check_le("rotation_lambda_max", *std::max_element(q.lambdas.begin(), q.lambdas.end()), 0.0, tol.lambda_exact);
    out.add_cases(p.lambdas.size() + q.lambdas.size());
  }

  // Random composites: subadditivity, symmetry, inverse bound.
  {
    const std::size_t samples = param_count(config, "composites", 100);
    auto& table = out.table("composites", {"n", "sample", "lambda_plus", "lambda_plus_inverse", "inverse_bound",
                                           "inverse_pass", "subadditivity_excess", "det_defect"});
    for (const std::size_t n : {std::size_t{2}, std::size_t{3}}) {
      const std::size_t g = param_count(config, n == 2 ? "resolution_2d" : "resolution_3d", n == 2 ? 128 : default_resolution(n));
      const std::string stream = "diffeo/composites/" + std::to_string(n);
      const bool linear_parts = n == 2;
      const auto rows = parallel::map<CompositeSample>(samples, [&](std::size_t i) {
        return composite_sample(config.rng(stream, i), n, linear_parts, g, i < 10);
      });
      const double root = std::sqrt(static_cast<double>(n - 1));
      double sub = -std::numeric_limits<double>::infinity();
      double inv = -std::numeric_limits<double>::infinity();
      double sharp = -std::numeric_limits<double>::infinity();
      double sym = 0.0;
      double det = 0.0;
      std::size_t inverse_failures = 0;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        const double bound = root * r.lambda_plus;
        const bool pass = r.lambda_plus_inverse <= bound + tol.quadrature_slack;
        if (!pass) ++inverse_failures;
        sub = std::max(sub, r.subadditivity_excess);
        inv = std::max(inv, r.lambda_plus_inverse - bound);
        sharp = std::max(sharp, r.lambda_plus_inverse - static_cast<double>(n - 1) * r.lambda_plus);
        sym = std::max(sym, r.symmetry);
        det = std::max(det, r.det_defect);
        table.row()
            .add(static_cast<std::uint64_t>(n))
            .add(static_cast<std::uint64_t>(i))
            .add(r.lambda_plus)
            .add(r.lambda_plus_inverse)
            .add(bound)
            .add(pass)
            .add(r.subadditivity_excess)
            .add(r.det_defect);
      }
      const std::string tag = "[n=" + std::to_string(n) + "]";
      out.check_le("subadditivity_excess_max" + tag, sub, 0.0, tol.quadrature_slack);
      out.check_le("inverse_bound_excess_max" + tag, inv, 0.0, tol.quadrature_slack);
      out.check_le("inverse_bound_sharp_excess_max" + tag, sharp, 0.0, tol.quadrature_slack);
      if (inverse_failures > 0) {
        out.warn(std::to_string(inverse_failures) + " of " + std::to_string(samples) + " composites in n=" +
                 std::to_string(n) + " have lambda_+(phi^-1) > sqrt(n-1) lambda_+(phi)");
      }
      out.check_le("lambda_symmetry_max" + tag, sym, 0.0, 0.0);
      out.check_le("jacobian_det_defect_max" + tag, det, 0.0, tol.jacobian_det);
      out.add_cases(samples);
    }
  }

  // Linear maps in n = 3 reach the sharp constant n - 1, above sqrt(n - 1).
  {
    const TorusDiffeo a = TorusDiffeo::linear(int_matrix(3, {2, 1, 0, 1, 1, 0, 0, 0, 1}));
    const InverseBoundReport r = inverse_bound_check(a, default_resolution(3));
    out.check_le("linear_inverse_ratio_sharp[n=3]", r.lambda_plus_inverse, 2.0 * r.lambda_plus, tol.lambda_exact);
  }

  // Quadrature convergence on a shear composite, and the serial reference.
  {
    CounterRng rng = config.rng("diffeo/quadrature", 0);
    const TorusDiffeo phi = random_composite(rng, 2, true);
    auto& table = out.table("quadrature", {"resolution", "lambda_plus", "serial", "difference_to_next"});
    std::vector<double> values;
    bool serial_match = true;
    for (const std::size_t g : {16, 32, 64, 128, 256}) {
      values.push_back(lambda_plus(phi, g).value);
      const double serial = lambda_plus_serial(phi, g);
      if (serial != values.back()) serial_match = false;
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
      table.row()
          .add(static_cast<std::uint64_t>(16u << i))
          .add(values[i])
          .add(lambda_plus_serial(phi, 16u << i))
          .add(i + 1 < values.size() ? std::abs(values[i + 1] - values[i]) : 0.0);
    }
    out.check_true("lambda_serial_parallel_identical", serial_match);
    out.check_le("quadrature_converged", std::abs(values[3] - values[4]), 0.0, tol.quadrature_slack);
  }

  // Pushforward on the lattice: linear maps act exactly and isometrically.
  {
    const std::size_t g = param_count(config, "lattice", 8);
    const FiniteMeasureSpace lattice = lattice_space(2, g);
    const SpaceModel spd2 = SpaceModel::spd(2);
    CounterRng rng = config.rng("diffeo/pushforward", 0);
    auto random_field = [&] {
      std::vector<Point> values;
      for (std::size_t k = 0; k < lattice.size(); ++k) values.push_back(random_point(spd2, rng));
      return SimpleFunction(lattice, spd2, std::move(values));
    };
    const TorusDiffeo a = cat_map();
    const TorusDiffeo b = TorusDiffeo::linear(int_matrix(2, {1, 1, 0, 1}));
    const SimpleFunction xi = random_field();
    const SimpleFunction eta = random_field();
    const PushforwardResult ax = pushforward_action(a, xi, g);
    const PushforwardResult ay = pushforward_action(a, eta, g);
    out.check_true("pushforward_linear_exact", ax.exact && ay.exact);
    out.check_le("pushforward_isometry_defect",
                 std::abs(l2_distance(ax.eta, ay.eta) - l2_distance(xi, eta)), 0.0, tol.pushforward_isometry);
    const SimpleFunction composed = pushforward_action(compose(a, b), xi, g).eta;
    const SimpleFunction stepwise = pushforward_action(a, pushforward_action(b, xi, g).eta, g).eta;
    out.check_le("pushforward_functoriality", l2_distance(composed, stepwise), 0.0, tol.pushforward_isometry);

    const SimpleFunction flat = SimpleFunction::constant(lattice, spd2, origin(spd2));
    Mat am(2, 2);
    am << 2.0, 1.0, 1.0, 1.0;
    const double moved = l2_distance(flat, pushforward_action(a, flat, g).eta);
    out.check_le("pushforward_constant_length_error", std::abs(moved - hs_log(am)), 0.0, tol.lambda_exact);

    const TorusDiffeo shear = TorusDiffeo::shear(2, 0, 1, 0.2, 1);
    const PushforwardResult sh = pushforward_action(shear, xi, g);
    out.check_true("pushforward_shear_reports_snap", !sh.exact && !sh.warning.empty());
    if (!sh.warning.empty()) out.warn("shear pushforward: " + sh.warning);

    // lambda(A^k) against l_{xi = I}(A^k_*): ratio within the comparability constant.
    auto& table = out.table("length_comparison", {"k", "lambda", "pushforward_length", "ratio"});
    const double constant = 2.0 * std::numbers::sqrt2;
    double worst = 0.0;
    double low = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 4; ++k) {
      const TorusDiffeo ak = a.power(k);
      const double lam = lambda(ak, default_resolution(2));
      const double len = l2_distance(flat, pushforward_action(ak, flat, g).eta);
      worst = std::max(worst, len / lam);
      low = std::min(low, len / lam);
      table.row().add(static_cast<std::int64_t>(k)).add(lam).add(len).add(len / lam);
    }
    out.check_le("pushforward_length_ratio_max", worst, constant, tol.lambda_exact * constant);
    out.check_ge("pushforward_length_ratio_min", low, 1.0 / constant);
    out.add_cases(8);
  }

  // Piecewise dials of unimodular matrices: lambda_+ <= l <= C_n lambda_+,
  // with C_n = 2 sqrt(n (n - 1)).
  {
    const std::size_t samples = param_count(config, "dials", 200);
    auto& table = out.table("dial_comparability", {"n", "max_ratio", "min_ratio", "sharp_constant",
                                                   "stated_constant", "stated_exceedances"});
    for (const std::size_t n : {std::size_t{2}, std::size_t{3}}) {
      const double sharp = 2.0 * std::sqrt(static_cast<double>(n * (n - 1)));
      const double stated = std::sqrt(static_cast<double>(n)) * (1.0 + std::sqrt(static_cast<double>(n - 1)));
      double max_ratio = 0.0;
      double min_ratio = std::numeric_limits<double>::infinity();
      std::size_t exceed = 0;
      for (std::size_t i = 0; i < samples; ++i) {
        CounterRng rng = config.rng("diffeo/dials/" + std::to_string(n), i);
        const std::size_t atoms = 1 + rng.below(4);
        std::vector<Mat> mats;
        std::vector<double> weights;
        double l2 = 0.0;
        for (std::size_t k = 0; k < atoms; ++k) {
          // Every fourth atom uses singular values (s, ..., s, s^{1-n}).
          if (rng.below(4) == 0) {
            const double s = std::exp(rng.uniform(0.1, 1.0));
            Vec sv = Vec::Constant(static_cast<Eigen::Index>(n), s);
            sv[static_cast<Eigen::Index>(n) - 1] = std::pow(s, 1.0 - static_cast<double>(n));
            mats.push_back(random_orthogonal(rng, n) * sv.asDiagonal() * random_orthogonal(rng, n));
          } else {
            mats.push_back(random_unimodular(rng, n, 0.8));
          }
          weights.push_back(rng.uniform(0.1, 1.0));
          const double l = hs_log(mats.back());
          l2 += weights.back() * l * l;
        }
        const double lam = lambda_plus_weighted(mats, weights);
        const double len = std::sqrt(l2);
        if (lam <= 0.0) continue;
        max_ratio = std::max(max_ratio, len / lam);
        min_ratio = std::min(min_ratio, len / lam);
        if (len > stated * lam * (1.0 + tol.lambda_exact)) ++exceed;
      }
      const std::string tag = "[n=" + std::to_string(n) + "]";
      out.check_le("dial_length_ratio_max" + tag, max_ratio, sharp, tol.lambda_exact * sharp);
      out.check_ge("dial_length_ratio_min" + tag, min_ratio, 1.0);
      if (exceed > 0) {
        out.warn("dials in n=" + std::to_string(n) + ": " + std::to_string(exceed) +
                 " samples exceed the constant sqrt(n)(1+sqrt(n-1)); the sharp constant is 2 sqrt(n(n-1))");
      }
      table.row()
          .add(static_cast<std::uint64_t>(n))
          .add(max_ratio)
          .add(min_ratio)
          .add(sharp)
          .add(stated)
          .add(static_cast<std::uint64_t>(exceed));
      out.add_cases(samples);
    }
  }
}

}  // namespace hadamard::suites
