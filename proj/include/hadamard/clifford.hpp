#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "hadamard/linalg.hpp"
#include "hadamard/spaces.hpp"
#include "hadamard/test_function.hpp"
#include "hadamard/tolerances.hpp"

namespace hadamard {

// Complex Clifford algebra of R^m in a fixed gamma-matrix representation of
// dimension 2^ceil(m/2). Even m = 2k uses the Jordan-Wigner gammas on k
// qubits with chirality Z^{(x)k} as grading. Odd m = 2k+1 doubles that
// representation: gamma_i = diag(G_i, G_i), gamma_m = diag(chi, -chi), and
// the grading swaps the two blocks. Every generator is then block diagonal,
// which is the M_{2^k} (+) M_{2^k} splitting.
class CliffordAlgebra {
 public:
  static constexpr std::size_t max_generators = 12;

  // Cached; throws ResourceError for m > 12.
  static std::shared_ptr<const CliffordAlgebra> build(std::size_t m);

  std::size_t m() const { return gammas_.size(); }
  std::size_t rep_dim() const { return static_cast<std::size_t>(grading_.rows()); }
  const CMat& gamma(std::size_t i) const { return gammas_[i]; }
  const std::vector<CMat>& gammas() const { return gammas_; }
  // Self-adjoint involution anticommuting with every generator.
  const CMat& grading() const { return grading_; }

  // max_{i,j} || g_i g_j + g_j g_i - 2 delta_ij ||.
  double relation_defect() const;

 private:
  CliffordAlgebra(std::vector<CMat> gammas, CMat grading)
      : gammas_(std::move(gammas)), grading_(std::move(grading)) {}
  std::vector<CMat> gammas_;
  CMat grading_;
};

using AlgebraPtr = std::shared_ptr<const CliffordAlgebra>;

struct CliffordElement {
  AlgebraPtr algebra;
  CMat matrix;

  double norm() const;  // largest singular value
  CliffordElement adjoint() const { return {algebra, matrix.adjoint()}; }
  // Commutes / anticommutes with the grading operator within tol * (1 + norm).
  bool is_even(double tol) const;
  bool is_odd(double tol) const;
};

CliffordElement operator+(const CliffordElement& a, const CliffordElement& b);
CliffordElement operator-(const CliffordElement& a, const CliffordElement& b);
CliffordElement operator*(const CliffordElement& a, const CliffordElement& b);
CliffordElement operator*(Complex c, const CliffordElement& a);

CliffordElement identity_element(const AlgebraPtr& alg);
// v-hat = sum_i v_i gamma_i.
CliffordElement vector_element(const AlgebraPtr& alg, const Vec& v);

// Element c * Id + w-hat with real c and w. Every real function of a vector
// element has this form, and its norm is |c| + |w|, so fields over large
// tangent spaces never need the matrix representation.
struct ScalarVector {
  double scalar = 0.0;
  Vec vector;

  double norm() const { return std::abs(scalar) + vector.norm(); }
  CliffordElement to_element(const AlgebraPtr& alg) const;
};

ScalarVector operator-(const ScalarVector& a, const ScalarVector& b);

// f(v-hat) = f_even(|v|) Id + (f_odd(|v|)/|v|) v-hat, and f(0) Id at v = 0.
ScalarVector functional_calculus_sv(const TestFunction& f, const Vec& v);
CliffordElement functional_calculus(const TestFunction& f, const Vec& v, const AlgebraPtr& alg);
// f applied to a self-adjoint element through its eigendecomposition.
CliffordElement spectral_calculus(const TestFunction& f, const CliffordElement& a);

// Action of an orthogonal matrix O on the algebra, determined by
// gamma_i -> sum_j O_ji gamma_j. Expands the element in the monomial basis.
CliffordElement clifford_transform(const Mat& o, const CliffordElement& a);
inline ScalarVector clifford_transform(const Mat& o, const ScalarVector& a) {
  return {a.scalar, o * a.vector};
}

struct FiberPoint {
  Point x;
  double t = 0.0;
};

// Coordinates of C_{x0}(x, t) = (-log_x(x0), t): tangent frame coordinates
// followed by one slot for the t-line.
Vec clifford_vector(const SpaceModel& model, const Point& x0, const FiberPoint& p);
// Algebra on dim(model) + 1 generators.
AlgebraPtr fiber_algebra(const SpaceModel& model);
CliffordElement clifford_operator(const SpaceModel& model, const Point& x0, const FiberPoint& p);

// beta_{x0}(f)(x, t) = f(C_{x0}(x, t)).
ScalarVector bott_eval_sv(const TestFunction& f, const SpaceModel& model, const Point& x0,
                          const FiberPoint& p);
CliffordElement bott_eval(const TestFunction& f, const SpaceModel& model, const Point& x0,
                          const FiberPoint& p);

struct BoundRow {
  std::size_t id = 0;
  double measured = 0.0;
  double bound = 0.0;
  double ratio = 0.0;  // measured / bound, 0 when both vanish
  bool pass = true;
};

// Sampled maxima are lower bounds of the true sup-norm, so a failing row
// disproves the inequality while passing rows only fail to disprove it.
struct BoundReport {
  std::vector<BoundRow> rows;
  double max_measured = 0.0;
  double max_ratio = 0.0;
  double max_excess = 0.0;  // max(measured - bound), can be negative
  std::size_t violations = 0;
};

// || beta_{x0}(f) - beta_{x1}(f) || on each sample against
// 2 Omega_r f + max{sqrt(2 Omega_r f Omega_2r f), Theta_r f}, r = d(x0, x1).
BoundReport base_point_bound_check(const TestFunction& f, const SpaceModel& model, const Point& x0,
                                   const Point& x1, std::span<const FiberPoint> samples,
                                   const Tolerances& tol = default_tolerances());

}  // namespace hadamard
