#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "hadamard/continuum.hpp"
#include "hadamard/linalg.hpp"
#include "hadamard/tolerances.hpp"

namespace hadamard {

using IntMat = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;

enum class DiffeoKind { Linear, Shear, Composite };

// Volume-preserving diffeomorphism of the flat torus R^n / Z^n.
//
//   Linear     x -> A x mod 1 for an integer matrix with |det A| = 1
//   Shear      x_target += a sin(2 pi k x_source + c), target != source
//   Composite  parts[0] o parts[1] o ... (last applied first)
//
// Each variant has a closed-form inverse.
class TorusDiffeo {
 public:
  static TorusDiffeo identity(std::size_t n);
  static TorusDiffeo linear(IntMat a);
  static TorusDiffeo shear(std::size_t n, std::size_t target, std::size_t source, double amplitude,
                           int frequency, double phase = 0.0);
  static TorusDiffeo composite(std::vector<TorusDiffeo> parts);

  DiffeoKind kind() const { return kind_; }
  std::size_t dim() const { return n_; }
  const IntMat& matrix() const { return matrix_; }
  std::size_t target() const { return target_; }
  std::size_t source() const { return source_; }
  double amplitude() const { return amplitude_; }
  int frequency() const { return frequency_; }
  double phase() const { return phase_; }
  const std::vector<TorusDiffeo>& parts() const { return *parts_; }

  // Image reduced to [0, 1)^n.
  Vec apply(const Vec& x) const;
  Mat jacobian(const Vec& x) const;
  TorusDiffeo inverse() const;
  // phi^k for k >= 0; products of linear maps are multiplied out exactly.
  TorusDiffeo power(int k) const;
  // True when every grid node c/g is mapped onto a grid node.
  bool preserves_lattice() const;

  std::string describe() const;

 private:
  DiffeoKind kind_ = DiffeoKind::Linear;
  std::size_t n_ = 0;
  IntMat matrix_;
  std::size_t target_ = 0;
  std::size_t source_ = 0;
  double amplitude_ = 0.0;
  int frequency_ = 0;
  double phase_ = 0.0;
  std::shared_ptr<const std::vector<TorusDiffeo>> parts_ = std::make_shared<const std::vector<TorusDiffeo>>();
};

// phi o psi with linear pairs multiplied out.
TorusDiffeo compose(const TorusDiffeo& phi, const TorusDiffeo& psi);

// Midpoints (i + 1/2)/g of the uniform grid, axis 0 fastest.
std::vector<Vec> midpoint_grid(std::size_t n, std::size_t g);

struct JacobianField {
  std::size_t resolution = 0;
  std::vector<Vec> nodes;
  std::vector<Mat> values;

  // max over nodes of ||det| - 1|.
  double max_det_defect() const;
};

JacobianField jacobian_field(const TorusDiffeo& phi, std::size_t g);
JacobianField jacobian_field_serial(const TorusDiffeo& phi, std::size_t g);

struct LambdaEstimate {
  double value = 0.0;
  double error_estimate = 0.0;  // |value(g) - value(2g)|, 0 for linear maps
  std::size_t resolution = 0;
};

// Default resolution: 64 per axis for n = 2, 16 for n = 3, 8 beyond.
std::size_t default_resolution(std::size_t n);

// (int log(||D phi||)^2 dx)^{1/2} by the midpoint rule on a g^n grid, with
// the resolution-doubling error estimate when `estimate_error` is set.
LambdaEstimate lambda_plus(const TorusDiffeo& phi, std::size_t g, bool estimate_error = false);
double lambda_plus_serial(const TorusDiffeo& phi, std::size_t g);
// Same functional for a weighted family of unimodular matrices.
double lambda_plus_weighted(std::span<const Mat> jacobians, std::span<const double> weights);

// max{lambda_+(phi), lambda_+(phi^-1)}.
double lambda(const TorusDiffeo& phi, std::size_t g);

struct InverseBoundReport {
  double lambda_plus = 0.0;
  double lambda_plus_inverse = 0.0;
  double bound = 0.0;  // sqrt(n - 1) * lambda_plus
  bool pass = true;
};

InverseBoundReport inverse_bound_check(const TorusDiffeo& phi, std::size_t g,
                                       const Tolerances& tol = default_tolerances());

struct DiscretenessProfile {
  std::vector<double> lambdas;  // lambda(phi^k), k = 1..k_max
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  bool discrete = false;  // slope > 0 and R^2 > 0.99
};

DiscretenessProfile geometric_discreteness_profile(const TorusDiffeo& generator, std::size_t k_max,
                                                   std::size_t g);

// Atoms of the lattice space are the nodes c/g, c in {0..g-1}^n, axis 0
// fastest, each of mass g^-n.
FiniteMeasureSpace lattice_space(std::size_t n, std::size_t g);

struct PushforwardResult {
  SimpleFunction eta;
  bool exact = true;          // every preimage landed on a node
  double max_offset = 0.0;    // largest distance from a preimage to its node
  double isometry_defect = 0.0;
  std::string warning;
};

// phi_*(xi)(x) = D phi(phi^-1 x) xi(phi^-1 x) D phi(phi^-1 x)^T. Preimages
// off the lattice are snapped to the nearest node and reported.
PushforwardResult pushforward_action(const TorusDiffeo& phi, const SimpleFunction& xi, std::size_t g);

}  // namespace hadamard
