#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hadamard/spaces.hpp"

namespace hadamard {

// Finite measure space given by weighted atoms. Atoms of a space built with
// `unit_interval` additionally remember the sub-interval of [0,1] they stand
// for, which lets deformations cut them.
class FiniteMeasureSpace {
 public:
  FiniteMeasureSpace() = default;
  explicit FiniteMeasureSpace(std::vector<double> weights, std::vector<std::string> labels = {});

  static FiniteMeasureSpace uniform(std::size_t atoms, double total = 1.0);
  // Atoms [b_k, b_{k+1}) for strictly increasing breakpoints 0 = b_0 < ... < b_n = 1.
  static FiniteMeasureSpace unit_interval(const std::vector<double>& breakpoints);
  static FiniteMeasureSpace unit_interval(std::size_t equal_atoms);

  std::size_t size() const { return weights_.size(); }
  double weight(std::size_t atom) const { return weights_[atom]; }
  const std::vector<double>& weights() const { return weights_; }
  const std::string& label(std::size_t atom) const { return labels_[atom]; }
  const std::vector<std::string>& labels() const { return labels_; }
  double total() const { return total_; }

  bool has_intervals() const { return !breakpoints_.empty(); }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  std::pair<double, double> interval(std::size_t atom) const;

  // Refines an interval space so that every cut is a breakpoint. Returns the
  // refined space and, for each new atom, the atom it came from.
  std::pair<FiniteMeasureSpace, std::vector<std::size_t>> refined_at(
      std::span<const double> cuts) const;

  bool operator==(const FiniteMeasureSpace& other) const {
    return weights_ == other.weights_ && breakpoints_ == other.breakpoints_;
  }

 private:
  std::vector<double> weights_;
  std::vector<std::string> labels_;
  std::vector<double> breakpoints_;
  double total_ = 0.0;
};

// Finite measurable partition: a map from atoms to {0, ..., index_size - 1}.
struct Partition {
  std::size_t index_size = 0;
  std::vector<std::size_t> assignment;

  bool operator==(const Partition&) const = default;
};

// Element of the continuum product L^2(Y, mu, M) with finitely many atoms.
class SimpleFunction {
 public:
  SimpleFunction(FiniteMeasureSpace space, SpaceModel model, std::vector<Point> values);
  static SimpleFunction constant(FiniteMeasureSpace space, SpaceModel model, const Point& x);

  const FiniteMeasureSpace& space() const { return space_; }
  const SpaceModel& model() const { return model_; }
  const std::vector<Point>& values() const { return values_; }
  const Point& value(std::size_t atom) const { return values_[atom]; }

  // The continuum product over finitely many atoms is the weighted product
  // model with the atom masses as weights.
  SpaceModel product_model() const;
  Point as_point() const;
  static SimpleFunction from_point(FiniteMeasureSpace space, SpaceModel model, const Point& p);

  // Same function on a refinement; `parent[k]` is the atom new atom k lies in.
  SimpleFunction refined(FiniteMeasureSpace finer, std::span<const std::size_t> parent) const;

  bool operator==(const SimpleFunction& other) const {
    return space_ == other.space_ && model_ == other.model_ && values_ == other.values_;
  }

 private:
  FiniteMeasureSpace space_;
  SpaceModel model_;
  std::vector<Point> values_;
};

double l2_distance(const SimpleFunction& xi, const SimpleFunction& eta);
SimpleFunction l2_geodesic(const SimpleFunction& xi, const SimpleFunction& eta, double t);
double l2_cn_residual(const SimpleFunction& p, const SimpleFunction& q, const SimpleFunction& r);

// Image of `xi` under a measure-preserving merge of atoms (`merge[a]` is the
// target atom of a). Requires xi to be constant on every merged fiber.
SimpleFunction merge_atoms(const SimpleFunction& xi, std::span<const std::size_t> merge,
                           std::size_t target_atoms);

double partition_delta(const FiniteMeasureSpace& space, const Partition& p1, const Partition& p2);

// Relabel a partition through `map` : I_1 -> I_2.
Partition compose(std::span<const std::size_t> map, const Partition& p, std::size_t target_size);

struct RefinementResult {
  bool refines = false;
  std::vector<std::size_t> witness;  // I_1 -> I_2
  double delta = 0.0;                // delta(P_2, witness o P_1)
};

// Greedy witness: each cell of P_1 goes to the cell of P_2 it overlaps most.
RefinementResult refines(const FiniteMeasureSpace& space, const Partition& p1,
                         const Partition& p2, double eps);

// P_n(y) = indicator bit pattern of y over A_0..A_n, encoded with bit j for A_j.
std::vector<Partition> refining_sequence(const FiniteMeasureSpace& space,
                                         const std::vector<std::vector<std::size_t>>& subsets);

// Partition of the atoms by the value the function takes there.
struct LevelPartition {
  Partition partition;
  std::vector<Point> levels;
};
LevelPartition level_partition(const SimpleFunction& xi);

struct SimpleApproximation {
  SimpleFunction eta;
  std::vector<std::size_t> center_of_atom;
  double distance = 0.0;
  double bound = 0.0;  // eps * sqrt(mu(Y) + 1)
};

// Snap each value to the first center within eps (cells
// B_eps(c_i) minus earlier balls). Throws CoverageError for uncovered atoms.
SimpleApproximation approximate_by_simple(const SimpleFunction& xi, std::span<const Point> centers,
                                          double eps);

// One stage of an exhausting sequence: a partition of Y and a finite sample
// of the stage-m convex subset of M. Stage samples accumulate.
struct ApproximationStage {
  Partition partition;
  std::vector<Point> points;
};

struct AdmissibleApproximation {
  std::size_t index = 0;        // stage m used for the partition
  std::size_t cover_index = 0;  // first stage whose samples eps'-cover im(xi)
  SimpleFunction eta;
  double eps_prime = 0.0;
  double eps_double_prime = 0.0;
  double diameter = 0.0;
  double delta = 0.0;
  double distance = 0.0;
};

AdmissibleApproximation admissible_approximation(const SimpleFunction& xi,
                                                 std::span<const ApproximationStage> stages,
                                                 double eps);

}  // namespace hadamard
