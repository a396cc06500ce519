#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "hadamard/clifford.hpp"
#include "hadamard/continuum.hpp"
#include "hadamard/spaces.hpp"
#include "hadamard/test_function.hpp"
#include "hadamard/tolerances.hpp"

namespace hadamard {

enum class IsometryKind {
  Identity,
  SpdCongruence,         // A -> T A T^T, |det T| = 1
  EuclideanAffine,       // x -> Q x + b
  ProductComponentwise,  // one isometry per product factor
  AtomPermutation,       // part i moves to slot perm[i]; equal-weight atoms only
  PiecewiseDial,         // one isometry per atom of a continuum product
  Composite,             // parts[0] o parts[1] o ... (last applied first)
};

class IsometryDescriptor {
 public:
  IsometryDescriptor() = default;  // identity

  static IsometryDescriptor identity() { return {}; }
  static IsometryDescriptor spd_congruence(Mat t, const Tolerances& tol = default_tolerances());
  static IsometryDescriptor euclidean_affine(Mat q, Vec b, const Tolerances& tol = default_tolerances());
  static IsometryDescriptor componentwise(std::vector<IsometryDescriptor> parts);
  static IsometryDescriptor atom_permutation(std::vector<std::size_t> perm);
  static IsometryDescriptor piecewise_dial(std::vector<IsometryDescriptor> per_atom);
  static IsometryDescriptor composite(std::vector<IsometryDescriptor> parts);

  IsometryKind kind() const { return kind_; }
  const Mat& matrix() const { return matrix_; }
  const Vec& shift() const { return shift_; }
  const std::vector<IsometryDescriptor>& parts() const { return *parts_; }
  const std::vector<std::size_t>& permutation() const { return perm_; }

  std::string describe() const;

 private:
  IsometryKind kind_ = IsometryKind::Identity;
  Mat matrix_;
  Vec shift_;
  std::shared_ptr<const std::vector<IsometryDescriptor>> parts_ =
      std::make_shared<const std::vector<IsometryDescriptor>>();
  std::vector<std::size_t> perm_;
};

Point apply(const IsometryDescriptor& phi, const SpaceModel& model, const Point& x);
SimpleFunction apply(const IsometryDescriptor& phi, const SimpleFunction& xi);
IsometryDescriptor inverse(const IsometryDescriptor& phi);

// phi o psi as a Composite: applying it runs psi then phi, bit for bit.
IsometryDescriptor compose(const IsometryDescriptor& phi, const IsometryDescriptor& psi);
// phi o psi with matrix parts multiplied out where both sides allow it.
IsometryDescriptor compose_simplified(const IsometryDescriptor& phi, const IsometryDescriptor& psi);

// D_x phi : T_x -> T_{phi(x)} in the model's orthonormal frames.
Mat derivative(const IsometryDescriptor& phi, const SpaceModel& model, const Point& x);

// phi_*(beta_{x0}(f)) at p: Cl(D_{phi^-1 x} phi (+) 1) applied to
// beta_{x0}(f)(phi^-1 x, t).
CliffordElement induced_automorphism(const IsometryDescriptor& phi, const SpaceModel& model,
                                     const Point& x0, const TestFunction& f, const FiberPoint& p);
ScalarVector induced_automorphism_sv(const IsometryDescriptor& phi, const SpaceModel& model,
                                     const Point& x0, const TestFunction& f, const FiberPoint& p);

// l_x(phi) = d(x, phi(x)).
double length_function(const SpaceModel& model, const Point& x, const IsometryDescriptor& phi);
double length_function(const SimpleFunction& xi, const IsometryDescriptor& phi);

// phi applied on every atom of the measure space.
IsometryDescriptor continuum_lift(const IsometryDescriptor& phi, const FiniteMeasureSpace& space);

// H(phi, t): phi on the part of [0,1] below the cut, identity above it.
struct DeformedIsometry {
  IsometryDescriptor base;
  double cut = 0.0;
};

DeformedIsometry deform(const IsometryDescriptor& phi, double t);
// Dial of H(phi, t) on an interval space whose breakpoints include the cut.
IsometryDescriptor deformed_dial(const DeformedIsometry& h, const FiniteMeasureSpace& space);
// Refines xi at the cut when needed, then applies the dial.
SimpleFunction apply_deformed(const DeformedIsometry& h, const SimpleFunction& xi);
// (sum_atoms |atom cap [0,t]| * l_{xi(atom)}(phi)^2)^{1/2}.
double deformed_length_integral(const IsometryDescriptor& phi, const SimpleFunction& xi, double t);

struct PropernessRow {
  std::size_t k = 0;       // word length
  std::size_t words = 0;   // distinct elements first reached at length k
  double min_length = 0.0;
  double max_length = 0.0;
  double overlap_free_fraction = 0.0;  // share of words with d(x, gx) > 2R
  double max_overlap = 0.0;            // sup of h(d/2)^2 over the words, h the hat of radius R
};

struct PropernessProfile {
  std::vector<PropernessRow> rows;
  std::size_t elements = 0;
};

// Ball enumeration in the word metric of the generators and their inverses.
// Elements are identified by their images of the probe points, rounded to
// 1e-8. Throws ResourceError beyond `max_elements`.
PropernessProfile properness_profile(std::span<const IsometryDescriptor> generators,
                                     const SpaceModel& model, const Point& x, std::size_t radius,
                                     double support_radius, std::span<const Point> probes,
                                     std::size_t max_elements = 200000);

struct InvarianceRow {
  double s = 0.0;
  double measured = 0.0;  // sampled sup of |beta(s.f) - alpha(H(phi,t)) beta(s.f)|
  double bound = 0.0;     // sup over r <= R of the base-point bound for s.f
  bool pass = true;
};

struct InvarianceProfile {
  std::vector<InvarianceRow> rows;
  double radius = 0.0;  // R = sup_t d(xi0, H(phi,t) xi0)
  bool decaying = false;  // bound(s_max) <= 0.2 bound(s_min) when s_max / s_min >= 100
};

struct ContinuumFiber {
  SimpleFunction xi;
  double t = 0.0;
};

// The base point is the constant function x0 on `space`; phi acts through
// H(phi, t) for each cut in `cuts`.
InvarianceProfile asymptotic_invariance_profile(const IsometryDescriptor& phi, const SpaceModel& model,
                                                const Point& x0, const TestFunction& f,
                                                std::span<const double> s_values,
                                                std::span<const double> cuts,
                                                const FiniteMeasureSpace& space,
                                                std::span<const ContinuumFiber> fibers,
                                                const Tolerances& tol = default_tolerances());

}  // namespace hadamard
