#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "common.hpp"

namespace hadamard::suites {

namespace {

struct MetricSample {
  double cn_scaled = 0.0;
  double geodesic_error = 0.0;
  double symmetry = 0.0;
  double triangle_excess = 0.0;
  double bicombing_excess = 0.0;
  double log_radial = 0.0;
  double log_semi_decreasing_excess = 0.0;
  double exp_log = 0.0;
};

MetricSample metric_sample(const SpaceModel& model, CounterRng rng) {
  const Point p = random_point(model, rng);
  const Point q = random_point(model, rng);
  const Point r = random_point(model, rng);
  const Point s = random_point(model, rng);
  const double t = rng.uniform();
  MetricSample out;

  const double pq = distance(model, p, q);
  const double pr = distance(model, p, r);
  const double qr = distance(model, q, r);
  out.cn_scaled = cn_inequality_residual(model, p, q, r) / (1.0 + pq * pq + pr * pr);

  const Point g = geodesic(model, p, q, t);
  out.geodesic_error = std::max(std::abs(distance(model, p, g) - t * pq), std::abs(distance(model, g, q) - (1.0 - t) * pq)) /
                       (1.0 + pq);
  out.symmetry = std::abs(pq - distance(model, q, p)) / (1.0 + pq);
  out.triangle_excess = pr - pq - qr;

  const Point g2 = geodesic(model, r, s, t);
  out.bicombing_excess = distance(model, g, g2) - std::max(distance(model, p, r), distance(model, q, s));

  const TangentVector lq = log_map(model, p, q);
  const TangentVector lr = log_map(model, p, r);
  out.log_radial = std::abs(lq.norm() - pq) / (1.0 + pq);
  out.log_semi_decreasing_excess = (lq.coords - lr.coords).norm() - qr;

  const TangentVector v = random_tangent(model, p, rng);
  out.exp_log = (log_map(model, p, exp_map(model, v)).coords - v.coords).norm() / (1.0 + v.norm());
  return out;
}

// Eigenvalues of a symmetric 2x2 matrix from the characteristic polynomial.
double spd2_distance_to_identity_oracle(const Mat& a) {
  const double tr = a(0, 0) + a(1, 1);
  const double det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  const double disc = std::sqrt(tr * tr - 4.0 * det);
  const double l1 = 0.5 * (tr + disc);
  const double l2 = det / l1;
  return std::hypot(std::log(l1), std::log(l2));
}

}  // namespace

void run_cat0(const ExperimentConfig& config, SuiteResult& out) {
  const Tolerances& tol = config.tolerances;
  const std::size_t samples = param_count(config, "samples", 10000);
  const std::vector<double> atom_weights{0.5, 0.3, 0.2};
  const SpaceModel spd2 = SpaceModel::spd(2);
  const std::vector<SpaceModel> models = param_models(
      config, "models", {SpaceModel::euclidean(4), spd2, SpaceModel::spd(3), l2_product(spd2, atom_weights)});

  auto& model_table = out.table("metric_models", {"model", "samples", "min_cn_scaled", "max_geodesic_error",
                                                  "max_symmetry", "max_triangle_excess", "max_bicombing_excess",
                                                  "max_log_radial", "max_log_semi_decreasing_excess",
                                                  "max_exp_log"});
  for (const SpaceModel& model : models) {
    const std::string stream = "cat0/metric/" + model.name();
    const auto rows = parallel::map<MetricSample>(samples, [&](std::size_t i) {
      return metric_sample(model, config.rng(stream, i));
    });
    MetricSample worst;
    worst.cn_scaled = std::numeric_limits<double>::infinity();
    worst.triangle_excess = worst.bicombing_excess = worst.log_semi_decreasing_excess =
        -std::numeric_limits<double>::infinity();
    for (const auto& r : rows) {
      worst.cn_scaled = std::min(worst.cn_scaled, r.cn_scaled);
      worst.geodesic_error = std::max(worst.geodesic_error, r.geodesic_error);
      worst.symmetry = std::max(worst.symmetry, r.symmetry);
      worst.triangle_excess = std::max(worst.triangle_excess, r.triangle_excess);
      worst.bicombing_excess = std::max(worst.bicombing_excess, r.bicombing_excess);
      worst.log_radial = std::max(worst.log_radial, r.log_radial);
      worst.log_semi_decreasing_excess = std::max(worst.log_semi_decreasing_excess, r.log_semi_decreasing_excess);
      worst.exp_log = std::max(worst.exp_log, r.exp_log);
    }
    const std::string tag = "[" + model.name() + "]";
    out.check_ge("cn_residual_min" + tag, worst.cn_scaled, 0.0, tol.cn_residual_rel);
    out.check_le("geodesic_interpolation_max" + tag, worst.geodesic_error, 0.0, tol.geodesic_interpolation_rel);
    out.check_le("distance_symmetry_max" + tag, worst.symmetry, 0.0, tol.distance_symmetry_rel);
    out.check_le("triangle_excess_max" + tag, worst.triangle_excess, 0.0, tol.triangle);
    out.check_le("bicombing_excess_max" + tag, worst.bicombing_excess, 0.0, tol.bicombing);
    out.check_le("log_radial_max" + tag, worst.log_radial, 0.0, tol.log_radial);
    out.check_le("log_semi_decreasing_excess_max" + tag, worst.log_semi_decreasing_excess, 0.0, tol.log_radial);
    out.check_le("exp_log_roundtrip_max" + tag, worst.exp_log, 0.0, tol.exp_log_roundtrip);
    model_table.row()
        .add(model.name())
        .add(static_cast<std::uint64_t>(samples))
        .add(worst.cn_scaled)
        .add(worst.geodesic_error)
        .add(worst.symmetry)
        .add(worst.triangle_excess)
        .add(worst.bicombing_excess)
        .add(worst.log_radial)
        .add(worst.log_semi_decreasing_excess)
        .add(worst.exp_log);
    out.add_cases(samples);
  }

  // Fixed SPD(2) values.
  {
    const double e = std::numbers::e;
    Mat d(2, 2);
    d << e, 0.0, 0.0, 1.0 / e;
    const Mat id = Mat::Identity(2, 2);
    const double diag_distance = distance(spd2, Point::matrix(d), Point::matrix(id));
    out.check_le("spd_diag_distance_error", std::abs(diag_distance - std::numbers::sqrt2), 0.0, tol.spd_exact);
    Mat t(2, 2);
    t << 1.0, 1.0, 0.0, 1.0;
    const Mat tt = t.transpose() * t;
    const double measured = distance(spd2, Point::matrix(tt), Point::matrix(id));
    const double oracle = spd2_distance_to_identity_oracle(tt);
    out.check_le("spd_shear_distance_oracle_error", std::abs(measured - oracle), 0.0, tol.spd_oracle);
    auto& fixed = out.table("spd_fixed_values", {"case", "measured", "reference"});
    fixed.row().add("d(diag(e,1/e),I)").add(diag_distance).add(std::numbers::sqrt2);
    fixed.row().add("d(T^T T,I) T=[[1,1],[0,1]]").add(measured).add(oracle);
    out.add_cases(2);
  }

  // ||log T^T T||_op <= ||log T^T T||_HS <= sqrt(n) ||log T^T T||_op, and
  // the ratio log||T^-1|| / log||T|| against sqrt(n-1) and n-1.
  {
    const std::size_t count = param_count(config, "bilipschitz_samples", 1000);
    auto& table = out.table("bilipschitz", {"n", "samples", "max_op_minus_hs", "max_hs_over_op", "sqrt_n",
                                            "max_inverse_log_ratio", "sqrt_n_minus_1", "above_sqrt_n_minus_1"});
    for (std::size_t n : {2, 3, 4}) {
      struct Row {
        double op_minus_hs;
        double hs_over_op;
        double inverse_ratio;
      };
      const auto rows = parallel::map<Row>(count, [&](std::size_t i) {
        CounterRng rng = config.rng("cat0/bilipschitz/" + std::to_string(n), i);
        const Mat t = random_unimodular(rng, n, 0.8);
        const Mat l = linalg::sym_log(t.transpose() * t);
        const double op = linalg::spectral_norm(l);
        const double hs = linalg::hs_norm(l);
        const double norm_t = std::log(linalg::spectral_norm(t));
        const double norm_inv = std::log(linalg::spectral_norm(Mat(t.inverse())));
        return Row{op - hs, hs / op, norm_t > 1e-12 ? norm_inv / norm_t : 0.0};
      });
      double op_minus_hs = -std::numeric_limits<double>::infinity();
      double hs_over_op = 0.0;
      double inverse_ratio = 0.0;
      std::size_t above = 0;
      const double sqrt_n1 = std::sqrt(static_cast<double>(n) - 1.0);
      for (const auto& r : rows) {
        op_minus_hs = std::max(op_minus_hs, r.op_minus_hs);
        hs_over_op = std::max(hs_over_op, r.hs_over_op);
        inverse_ratio = std::max(inverse_ratio, r.inverse_ratio);
        if (r.inverse_ratio > sqrt_n1 + 1e-12) ++above;
      }
      const std::string tag = "[n=" + std::to_string(n) + "]";
      out.check_le("bilipschitz_lower" + tag, op_minus_hs, 0.0, tol.spd_exact);
      out.check_le("bilipschitz_upper" + tag, hs_over_op, std::sqrt(static_cast<double>(n)), tol.spd_exact);
      // log||T^-1|| <= (n-1) log||T|| is sharp; sqrt(n-1) only holds for n = 2.
      out.check_le("inverse_norm_log_ratio" + tag, inverse_ratio, static_cast<double>(n) - 1.0, tol.spd_exact);
      if (above > 0) {
        out.warn(std::to_string(above) + " of " + std::to_string(count) + " unimodular T with n=" + std::to_string(n) +
                 " have log||T^-1|| > sqrt(n-1) log||T||");
      }
      table.row()
          .add(static_cast<std::uint64_t>(n))
          .add(static_cast<std::uint64_t>(count))
          .add(op_minus_hs)
          .add(hs_over_op)
          .add(std::sqrt(static_cast<double>(n)))
          .add(inverse_ratio)
          .add(sqrt_n1)
          .add(static_cast<std::uint64_t>(above));
      out.add_cases(count);
    }
  }

  // Tangent-cone Gram matrices are positive semidefinite.
  {
    const std::size_t bases = param_count(config, "schoenberg_bases", 100);
    const std::size_t directions = param_count(config, "schoenberg_directions", 20);
    const std::vector<SpaceModel> gram_models{spd2, SpaceModel::spd(3), l2_product(spd2, atom_weights)};
    auto& table = out.table("schoenberg", {"model", "bases", "directions", "min_eigenvalue_ratio"});
    for (const SpaceModel& model : gram_models) {
      const auto ratios = parallel::map<double>(bases, [&](std::size_t i) {
        CounterRng rng = config.rng("cat0/schoenberg/" + model.name(), i);
        const Point base = random_point(model, rng);
        std::vector<Point> pts;
        for (std::size_t k = 0; k < directions; ++k) pts.push_back(exp_map(model, random_tangent(model, base, rng)));
        return min_eigenvalue_ratio(tangent_cone_gram(model, base, pts));
      });
      const double worst = parallel::min_of(ratios);
      out.check_ge("schoenberg_min_eigenvalue_ratio[" + model.name() + "]", worst, 0.0, tol.schoenberg_rel);
      table.row().add(model.name()).add(static_cast<std::uint64_t>(bases)).add(static_cast<std::uint64_t>(directions)).add(worst);
      out.add_cases(bases);
    }
  }

  // Angles: finite-scale profiles against the tangent-space angle, and the
  // effect of perturbing the endpoints.
  {
    const std::size_t count = param_count(config, "angle_samples", 200);
    struct Row {
      double tangent_error;
      bool monotone;
      double perturbation[3];
    };
    const double deltas[3] = {1e-2, 1e-3, 1e-4};
    const auto rows = parallel::map<Row>(count, [&](std::size_t i) {
      CounterRng rng = config.rng("cat0/angles", i);
      const Point b = random_point(spd2, rng);
      const Point x = random_point(spd2, rng);
      const Point z = random_point(spd2, rng);
      const AngleProfile prof = angle_between(spd2, b, x, z, {1.0, 1e-1, 1e-2, 1e-3, 1e-4}, config.tolerances);
      const Vec u = log_map(spd2, b, x).coords;
      const Vec w = log_map(spd2, b, z).coords;
      const double tangent = std::acos(std::clamp(u.dot(w) / (u.norm() * w.norm()), -1.0, 1.0));
      Row row{std::abs(prof.angle - tangent), prof.monotone, {0.0, 0.0, 0.0}};
      for (int k = 0; k < 3; ++k) {
        const Point xp = exp_map(spd2, {x, deltas[k] * log_map(spd2, x, random_point(spd2, rng)).coords.normalized()});
        const Point zp = exp_map(spd2, {z, deltas[k] * log_map(spd2, z, random_point(spd2, rng)).coords.normalized()});
        const double moved = angle_between(spd2, b, xp, zp, {1e-4}, config.tolerances).angle;
        row.perturbation[k] = std::abs(moved - prof.angle);
      }
      return row;
    });
    double tangent_error = 0.0;
    std::size_t non_monotone = 0;
    double perturb[3] = {0.0, 0.0, 0.0};
    for (const auto& r : rows) {
      tangent_error = std::max(tangent_error, r.tangent_error);
      if (!r.monotone) ++non_monotone;
      for (int k = 0; k < 3; ++k) perturb[k] = std::max(perturb[k], r.perturbation[k]);
    }
    // Curvature moves the angle at scale s by O(s^2).
    out.check_le("angle_tangent_error_max", tangent_error, 0.0, tol.angle_tangent);
    out.check_le("angle_non_monotone_count", static_cast<double>(non_monotone), 0.0);
    out.check_le("angle_perturbation_shrinks", perturb[2], perturb[0]);
    auto& table = out.table("angle_perturbation", {"delta", "max_angle_change"});
    for (int k = 0; k < 3; ++k) table.row().add(deltas[k]).add(perturb[k]);
    out.add_cases(count);
  }
}

}  // namespace hadamard::suites
