#include <algorithm>
#include <cmath>

#include "common.hpp"

namespace hadamard::suites {

namespace {

struct CalculusSample {
  std::size_t m = 0;
  double square_defect = 0.0;    // |v^2 - |v|^2 Id|
  double anticommutator = 0.0;   // |vw + wv - 2<v,w> Id| / (1 + |v||w|)
  double norm_defect = 0.0;      // ||v-hat|| - |v|
  double calculus_error = 0.0;   // closed form vs eigendecomposition
  double product_error = 0.0;    // (f g)(v) vs f(v) g(v)
  double adjoint_error = 0.0;    // f(v)* vs conj(f)(v)
  double contraction_excess = 0.0;
  double sv_error = 0.0;         // scalar-vector form vs matrix form
  bool grading_ok = true;
};

CalculusSample calculus_sample(CounterRng rng, const Tolerances& tol) {
  CalculusSample out;
  out.m = 1 + rng.below(8);
  const AlgebraPtr alg = CliffordAlgebra::build(out.m);
  const Vec v = rng.uniform(0.0, 3.0) * normal_vector(rng, out.m).normalized();
  const Vec w = normal_vector(rng, out.m);
  const CliffordElement vh = vector_element(alg, v);
  const CliffordElement wh = vector_element(alg, w);
  const CliffordElement id = identity_element(alg);

  out.square_defect = (vh * vh - Complex(v.squaredNorm()) * id).norm();
  out.anticommutator = (vh * wh + wh * vh - Complex(2.0 * v.dot(w)) * id).norm() / (1.0 + v.norm() * w.norm());
  out.norm_defect = std::abs(vh.norm() - v.norm());

  const TestFunction f = random_family_member(rng);
  const TestFunction g = random_family_member(rng);
  const CliffordElement fv = functional_calculus(f, v, alg);
  out.calculus_error = (fv - spectral_calculus(f, vh)).norm();

  const CMat fg = linalg::hermitian_function(vh.matrix, [&](double x) { return f(x) * g(x); });
  out.product_error = (fg - (fv * functional_calculus(g, v, alg)).matrix).norm();
  out.adjoint_error = (fv.adjoint() - functional_calculus(f.conjugate(), v, alg)).norm();
  out.contraction_excess = fv.norm() - f.sup_norm();
  out.sv_error = (functional_calculus_sv(f, v).to_element(alg) - fv).norm();

  if (f.is_even()) out.grading_ok = out.grading_ok && fv.is_even(tol.clifford_relation);
  if (f.is_odd()) out.grading_ok = out.grading_ok && fv.is_odd(tol.clifford_relation);
  return out;
}

// Off-diagonal block norm for odd m, where every generator is block diagonal.
double off_block(const CMat& a) {
  const Eigen::Index h = a.rows() / 2;
  return std::max(a.topRightCorner(h, h).cwiseAbs().maxCoeff(), a.bottomLeftCorner(h, h).cwiseAbs().maxCoeff());
}

}  // namespace

void run_clifford(const ExperimentConfig& config, SuiteResult& out) {
  const Tolerances& tol = config.tolerances;
  const std::size_t samples = param_count(config, "samples", 1000);
  const std::size_t max_m = std::min<std::size_t>(param_count(config, "max_generators", 12),
                                                  CliffordAlgebra::max_generators);

  auto& gen_table = out.table("generators", {"m", "rep_dim", "relation_defect", "grading_defect", "off_block"});
  double worst_relation = 0.0;
  double worst_grading = 0.0;
  double worst_block = 0.0;
  for (std::size_t m = 0; m <= max_m; ++m) {
    const AlgebraPtr alg = CliffordAlgebra::build(m);
    const CMat& z = alg->grading();
    const auto dim = static_cast<Eigen::Index>(alg->rep_dim());
    double grading = (z * z - CMat::Identity(dim, dim)).cwiseAbs().maxCoeff();
    grading = std::max(grading, (z - z.adjoint()).cwiseAbs().maxCoeff());
    double block = 0.0;
    for (const CMat& g : alg->gammas()) {
      grading = std::max(grading, (z * g + g * z).cwiseAbs().maxCoeff());
      grading = std::max(grading, (g - g.adjoint()).cwiseAbs().maxCoeff());
      if (m % 2 == 1) block = std::max(block, off_block(g));
    }
    const double relation = alg->relation_defect();
    worst_relation = std::max(worst_relation, relation);
    worst_grading = std::max(worst_grading, grading);
    worst_block = std::max(worst_block, block);
    gen_table.row()
        .add(static_cast<std::uint64_t>(m))
        .add(static_cast<std::uint64_t>(alg->rep_dim()))
        .add(relation)
        .add(grading)
        .add(block);
  }
  out.check_le("anticommutation_defect_max", worst_relation, 0.0, tol.clifford_relation);
  out.check_le("grading_defect_max", worst_grading, 0.0, tol.clifford_relation);
  out.check_le("odd_m_off_block_max", worst_block, 0.0, tol.clifford_relation);
  out.add_cases(max_m + 1);

  // One generator: gamma_1 = diag(1, -1) up to the fixed representation.
  {
    const AlgebraPtr alg = CliffordAlgebra::build(1);
    CMat expected = CMat::Zero(2, 2);
    expected(0, 0) = 1.0;
    expected(1, 1) = -1.0;
    out.check_le("single_generator_form", (alg->gamma(0) - expected).cwiseAbs().maxCoeff(), 0.0,
                 tol.clifford_relation);
  }

  const auto rows = parallel::map<CalculusSample>(samples, [&](std::size_t i) {
    return calculus_sample(config.rng("clifford/calculus", i), tol);
  });
  CalculusSample worst;
  worst.contraction_excess = -1.0;
  std::size_t grading_failures = 0;
  for (const auto& r : rows) {
    worst.square_defect = std::max(worst.square_defect, r.square_defect);
    worst.anticommutator = std::max(worst.anticommutator, r.anticommutator);
    worst.norm_defect = std::max(worst.norm_defect, r.norm_defect);
    worst.calculus_error = std::max(worst.calculus_error, r.calculus_error);
    worst.product_error = std::max(worst.product_error, r.product_error);
    worst.adjoint_error = std::max(worst.adjoint_error, r.adjoint_error);
    worst.contraction_excess = std::max(worst.contraction_excess, r.contraction_excess);
    worst.sv_error = std::max(worst.sv_error, r.sv_error);
    if (!r.grading_ok) ++grading_failures;
  }
  out.check_le("vector_square_defect_max", worst.square_defect, 0.0, tol.clifford_relation);
  out.check_le("vector_anticommutator_max", worst.anticommutator, 0.0, tol.clifford_relation);
  out.check_le("vector_norm_defect_max", worst.norm_defect, 0.0, tol.clifford_relation);
  out.check_le("functional_calculus_error_max", worst.calculus_error, 0.0, tol.functional_calculus);
  out.check_le("pointwise_product_error_max", worst.product_error, 0.0, tol.homomorphism);
  out.check_le("adjoint_error_max", worst.adjoint_error, 0.0, tol.homomorphism);
  out.check_le("norm_contraction_excess_max", worst.contraction_excess, 0.0, tol.homomorphism);
  out.check_le("scalar_vector_form_error_max", worst.sv_error, 0.0, tol.homomorphism);
  out.check_le("grading_failures", static_cast<double>(grading_failures), 0.0);
  out.add_cases(samples);

  auto& table = out.table("functional_calculus",
                          {"sample", "m", "square_defect", "calculus_error", "product_error", "sv_error"});
  for (std::size_t i = 0; i < rows.size(); ++i) {
    table.row()
        .add(static_cast<std::uint64_t>(i))
        .add(static_cast<std::uint64_t>(rows[i].m))
        .add(rows[i].square_defect)
        .add(rows[i].calculus_error)
        .add(rows[i].product_error)
        .add(rows[i].sv_error);
  }
}

}  // namespace hadamard::suites
