#pragma once

#include <array>
#include <string_view>
#include <utility>

namespace hadamard {

// Every numerical slack used by the library and the suites. Relative
// tolerances are multiplied by the natural scale of the quantity checked.
struct Tolerances {
  double spd_min_eigenvalue_rel = 1e-12;
  double unimodular_det = 1e-9;
  double eigenvalue_clamp = 1e-300;
  double degenerate_distance = 1e-12;

  double distance_symmetry_rel = 1e-12;
  double triangle = 1e-9;
  double cn_residual_rel = 1e-9;
  double geodesic_interpolation_rel = 1e-9;
  double log_radial = 1e-9;
  double exp_log_roundtrip = 1e-8;
  double bicombing = 1e-9;
  double angle_monotone = 1e-6;
  double angle_tangent = 1e-6;
  double schoenberg_rel = 1e-8;
  double spd_oracle = 1e-10;
  double spd_exact = 1e-12;

  double l2_metric = 1e-12;
  double l2_geodesic = 1e-9;

  double clifford_relation = 1e-12;
  double functional_calculus = 1e-9;
  double homomorphism = 1e-10;
  double base_point_lipschitz = 1e-9;
  double bott_bound = 1e-8;
  double rescale_exact = 1e-12;
  double rescale_grid = 1e-6;
  double grid_interpolation = 1e-6;

  double isometry_defect = 1e-9;
  double derivative_orthogonality = 1e-9;
  double derivative_fd = 1e-5;
  double equivariance = 1e-8;
  double length_formula = 1e-10;

  double jacobian_det = 1e-9;
  double quadrature_slack = 1e-6;
  double lambda_exact = 1e-9;
  double pushforward_isometry = 1e-8;
};

// Name -> member table used for configuration overrides.
inline constexpr std::array<std::pair<std::string_view, double Tolerances::*>, 35> tolerance_fields{{
    {"spd_min_eigenvalue_rel", &Tolerances::spd_min_eigenvalue_rel},
    {"unimodular_det", &Tolerances::unimodular_det},
    {"eigenvalue_clamp", &Tolerances::eigenvalue_clamp},
    {"degenerate_distance", &Tolerances::degenerate_distance},
    {"distance_symmetry_rel", &Tolerances::distance_symmetry_rel},
    {"triangle", &Tolerances::triangle},
    {"cn_residual_rel", &Tolerances::cn_residual_rel},
    {"geodesic_interpolation_rel", &Tolerances::geodesic_interpolation_rel},
    {"log_radial", &Tolerances::log_radial},
    {"exp_log_roundtrip", &Tolerances::exp_log_roundtrip},
    {"bicombing", &Tolerances::bicombing},
    {"angle_monotone", &Tolerances::angle_monotone},
    {"angle_tangent", &Tolerances::angle_tangent},
    {"schoenberg_rel", &Tolerances::schoenberg_rel},
    {"spd_oracle", &Tolerances::spd_oracle},
    {"spd_exact", &Tolerances::spd_exact},
    {"l2_metric", &Tolerances::l2_metric},
    {"l2_geodesic", &Tolerances::l2_geodesic},
    {"clifford_relation", &Tolerances::clifford_relation},
    {"functional_calculus", &Tolerances::functional_calculus},
    {"homomorphism", &Tolerances::homomorphism},
    {"base_point_lipschitz", &Tolerances::base_point_lipschitz},
    {"bott_bound", &Tolerances::bott_bound},
    {"rescale_exact", &Tolerances::rescale_exact},
    {"rescale_grid", &Tolerances::rescale_grid},
    {"grid_interpolation", &Tolerances::grid_interpolation},
    {"isometry_defect", &Tolerances::isometry_defect},
    {"derivative_orthogonality", &Tolerances::derivative_orthogonality},
    {"derivative_fd", &Tolerances::derivative_fd},
    {"equivariance", &Tolerances::equivariance},
    {"length_formula", &Tolerances::length_formula},
    {"jacobian_det", &Tolerances::jacobian_det},
    {"quadrature_slack", &Tolerances::quadrature_slack},
    {"lambda_exact", &Tolerances::lambda_exact},
    {"pushforward_isometry", &Tolerances::pushforward_isometry},
}};

inline const Tolerances& default_tolerances() {
  static const Tolerances tolerances{};
  return tolerances;
}

}  // namespace hadamard
