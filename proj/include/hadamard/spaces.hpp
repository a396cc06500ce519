#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "hadamard/linalg.hpp"
#include "hadamard/rng.hpp"
#include "hadamard/tolerances.hpp"

namespace hadamard {

enum class ModelKind { Euclidean, Spd, Product };

struct ProductFactor;

// A finite-dimensional Hadamard manifold: Euclidean space, the symmetric
// space of SPD matrices (optionally restricted to determinant one), or a
// weighted l2 product of models. Cheap to copy; immutable.
class SpaceModel {
 public:
  static SpaceModel euclidean(std::size_t dim);
  static SpaceModel spd(std::size_t n, bool unimodular = false);
  static SpaceModel product(std::vector<ProductFactor> factors);
  // l2 product of copies of `factor` with the given positive weights.
  static SpaceModel power(const SpaceModel& factor, std::span<const double> weights);

  ModelKind kind() const;
  // Dimension of the tangent space.
  std::size_t dim() const;
  // Euclidean: ambient dimension. Spd: matrix size n. Product: factor count.
  std::size_t size() const;
  bool unimodular() const;
  const std::vector<ProductFactor>& factors() const;

  // Short stable identifier, e.g. "euclidean:4", "spd:3", "spd1:3",
  // "product[spd:2@0.5,spd:2@0.5]".
  std::string name() const;

  bool operator==(const SpaceModel& other) const;

 private:
  struct Node;
  explicit SpaceModel(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct ProductFactor {
  SpaceModel model;
  double weight;
};

// Coordinates of a point. The layout is determined by the model the point
// belongs to; models check the shape on every operation.
class Point {
 public:
  Point() = default;
  static Point vector(Vec coords);
  static Point matrix(Mat spd);
  static Point product(std::vector<Point> parts);

  ModelKind kind() const { return kind_; }
  const Vec& vec() const { return vec_; }
  const Mat& mat() const { return mat_; }
  const std::vector<Point>& parts() const { return parts_; }

  bool operator==(const Point& other) const;

 private:
  ModelKind kind_ = ModelKind::Euclidean;
  Vec vec_;
  Mat mat_;
  std::vector<Point> parts_;
};

// Tangent vector expressed in the model's orthonormal frame at `base`.
// For SPD models the frame at A is the image of {E_ii} u {(E_ij+E_ji)/sqrt2}
// under X -> A^{1/2} X A^{1/2}; the unimodular model replaces the diagonal
// part with a Helmert basis of trace-zero diagonals.
struct TangentVector {
  Point base;
  Vec coords;

  double norm() const { return coords.norm(); }
};

// Shape check only; throws UsageError.
void check_compatible(const SpaceModel& model, const Point& p);
// Shape plus SPD / determinant invariants; throws UsageError or DomainError.
void validate(const SpaceModel& model, const Point& p, const Tolerances& tol = default_tolerances());

double distance(const SpaceModel& model, const Point& a, const Point& b);
Point geodesic(const SpaceModel& model, const Point& a, const Point& b, double t);
TangentVector log_map(const SpaceModel& model, const Point& base, const Point& x);
Point exp_map(const SpaceModel& model, const TangentVector& v);

// Angle at y of the Euclidean comparison triangle of (x, y, z).
double comparison_angle(const SpaceModel& model, const Point& x, const Point& y, const Point& z,
                        const Tolerances& tol = default_tolerances());

// d(p,q)^2 + d(p,r)^2 - 2 d(m,p)^2 - d(q,r)^2 / 2 with m the midpoint of
// [q, r]. Nonnegative on CAT(0) spaces.
double cn_inequality_residual(const SpaceModel& model, const Point& p, const Point& q,
                              const Point& r);

struct AngleProfile {
  std::vector<double> scales;  // sorted descending
  std::vector<double> angles;  // comparison angle at each scale
  double angle = 0.0;          // value at the smallest scale
  // Angles do not increase as the scale shrinks (within slack).
  bool monotone = true;
};

// Comparison angles between the geodesics base->x and base->z, sampled at
// the given fractions of each segment.
AngleProfile angle_between(const SpaceModel& model, const Point& base, const Point& x,
                           const Point& z, std::vector<double> scales = {1.0, 1e-1, 1e-2, 1e-3},
                           const Tolerances& tol = default_tolerances());

// Gram matrix <x_i - base, x_j - base> of the bilinear form induced by
// -d^2/2 on formal differences.
Mat schoenberg_gram(const SpaceModel& model, const Point& base, std::span<const Point> pts);

// Gram matrix of the tangent-cone samples at `base`: each point is pulled
// to fraction `scale` of its geodesic and distances are divided by `scale`.
Mat tangent_cone_gram(const SpaceModel& model, const Point& base, std::span<const Point> pts,
                      double scale = 1e-5);

// min eigenvalue / max |eigenvalue| of a symmetric matrix (0 for the zero matrix).
double min_eigenvalue_ratio(const Mat& gram);

// Identity / origin of the model.
Point origin(const SpaceModel& model);

// Random point: Euclidean coordinates ~ N(0, spread^2); SPD points are
// exponentials of random tangent vectors at the identity, projected to
// determinant one for unimodular models.
Point random_point(const SpaceModel& model, CounterRng& rng, double spread = 1.0);
TangentVector random_tangent(const SpaceModel& model, const Point& base, CounterRng& rng,
                             double spread = 1.0);

namespace spd {
// Coordinates of a symmetric matrix in the fixed orthonormal basis.
Vec sym_to_coords(const Mat& s, bool unimodular);
Mat coords_to_sym(const Vec& coords, std::size_t n, bool unimodular);
std::size_t tangent_dim(std::size_t n, bool unimodular);
}  // namespace spd

}  // namespace hadamard
