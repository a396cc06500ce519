#include "hadamard/continuum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "hadamard/errors.hpp"

namespace hadamard {

FiniteMeasureSpace::FiniteMeasureSpace(std::vector<double> weights, std::vector<std::string> labels)
    : weights_(std::move(weights)), labels_(std::move(labels)) {
  if (labels_.empty()) {
    for (std::size_t i = 0; i < weights_.size(); ++i) labels_.push_back("y" + std::to_string(i));
  }
  if (labels_.size() != weights_.size()) throw UsageError("one label per atom required");
  for (double w : weights_) {
    if (!(w > 0.0) || !std::isfinite(w)) throw UsageError("atom weights must be positive");
    total_ += w;
  }
}

FiniteMeasureSpace FiniteMeasureSpace::uniform(std::size_t atoms, double total) {
  if (atoms == 0) throw UsageError("measure space needs at least one atom");
  return FiniteMeasureSpace(std::vector<double>(atoms, total / static_cast<double>(atoms)));
}

FiniteMeasureSpace FiniteMeasureSpace::unit_interval(const std::vector<double>& breakpoints) {
  if (breakpoints.size() < 2 || breakpoints.front() != 0.0 || breakpoints.back() != 1.0) {
    throw UsageError("interval breakpoints must run from 0 to 1");
  }
  std::vector<double> weights;
  for (std::size_t k = 0; k + 1 < breakpoints.size(); ++k) {
    if (!(breakpoints[k + 1] > breakpoints[k])) {
      throw UsageError("interval breakpoints must increase strictly");
    }
    weights.push_back(breakpoints[k + 1] - breakpoints[k]);
  }
  FiniteMeasureSpace space(std::move(weights));
  space.breakpoints_ = breakpoints;
  return space;
}

FiniteMeasureSpace FiniteMeasureSpace::unit_interval(std::size_t equal_atoms) {
  if (equal_atoms == 0) throw UsageError("measure space needs at least one atom");
  std::vector<double> b(equal_atoms + 1);
  for (std::size_t k = 0; k <= equal_atoms; ++k) {
    b[k] = static_cast<double>(k) / static_cast<double>(equal_atoms);
  }
  return unit_interval(b);
}

std::pair<double, double> FiniteMeasureSpace::interval(std::size_t atom) const {
  if (!has_intervals()) throw UsageError("measure space atoms carry no intervals");
  return {breakpoints_[atom], breakpoints_[atom + 1]};
}

std::pair<FiniteMeasureSpace, std::vector<std::size_t>> FiniteMeasureSpace::refined_at(
    std::span<const double> cuts) const {
  if (!has_intervals()) throw UsageError("only interval spaces can be cut");
  std::vector<double> b = breakpoints_;
  for (double c : cuts) {
    if (!(c >= 0.0 && c <= 1.0)) throw UsageError("cut must lie in [0, 1]");
    b.push_back(c);
  }
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  std::vector<std::size_t> parent;
  std::size_t atom = 0;
  for (std::size_t k = 0; k + 1 < b.size(); ++k) {
    while (breakpoints_[atom + 1] <= b[k]) ++atom;
    parent.push_back(atom);
  }
  FiniteMeasureSpace finer = unit_interval(b);
  if (b == breakpoints_) finer.labels_ = labels_;
  return {std::move(finer), std::move(parent)};
}

SimpleFunction::SimpleFunction(FiniteMeasureSpace space, SpaceModel model, std::vector<Point> values)
    : space_(std::move(space)), model_(std::move(model)), values_(std::move(values)) {
  if (values_.size() != space_.size()) throw UsageError("simple function needs one value per atom");
  for (const auto& v : values_) check_compatible(model_, v);
}

SimpleFunction SimpleFunction::constant(FiniteMeasureSpace space, SpaceModel model, const Point& x) {
  std::vector<Point> values(space.size(), x);
  return SimpleFunction(std::move(space), std::move(model), std::move(values));
}

SpaceModel SimpleFunction::product_model() const {
  return SpaceModel::power(model_, space_.weights());
}

Point SimpleFunction::as_point() const { return Point::product(values_); }

SimpleFunction SimpleFunction::from_point(FiniteMeasureSpace space, SpaceModel model, const Point& p) {
  if (p.kind() != ModelKind::Product) throw UsageError("expected a product point");
  return SimpleFunction(std::move(space), std::move(model), p.parts());
}

SimpleFunction SimpleFunction::refined(FiniteMeasureSpace finer,
                                       std::span<const std::size_t> parent) const {
  if (parent.size() != finer.size()) throw UsageError("parent map must cover the finer space");
  std::vector<Point> values;
  values.reserve(parent.size());
  for (std::size_t p : parent) values.push_back(values_.at(p));
  return SimpleFunction(std::move(finer), model_, std::move(values));
}

namespace {

void require_same_domain(const SimpleFunction& a, const SimpleFunction& b) {
  if (!(a.space() == b.space())) throw UsageError("simple functions live on different spaces");
  if (!(a.model() == b.model())) throw UsageError("simple functions take values in different models");
}

}  // namespace

double l2_distance(const SimpleFunction& xi, const SimpleFunction& eta) {
  require_same_domain(xi, eta);
  double sum = 0.0;
  for (std::size_t a = 0; a < xi.space().size(); ++a) {
    const double d = distance(xi.model(), xi.value(a), eta.value(a));
    sum += xi.space().weight(a) * d * d;
  }
  return std::sqrt(sum);
}

SimpleFunction l2_geodesic(const SimpleFunction& xi, const SimpleFunction& eta, double t) {
  require_same_domain(xi, eta);
  std::vector<Point> values;
  values.reserve(xi.space().size());
  for (std::size_t a = 0; a < xi.space().size(); ++a) {
    values.push_back(geodesic(xi.model(), xi.value(a), eta.value(a), t));
  }
  return SimpleFunction(xi.space(), xi.model(), std::move(values));
}

double l2_cn_residual(const SimpleFunction& p, const SimpleFunction& q, const SimpleFunction& r) {
  const SimpleFunction m = l2_geodesic(q, r, 0.5);
  const double pq = l2_distance(p, q);
  const double pr = l2_distance(p, r);
  const double mp = l2_distance(m, p);
  const double qr = l2_distance(q, r);
  return pq * pq + pr * pr - 2.0 * mp * mp - 0.5 * qr * qr;
}

SimpleFunction merge_atoms(const SimpleFunction& xi, std::span<const std::size_t> merge,
                           std::size_t target_atoms) {
  const auto& space = xi.space();
  if (merge.size() != space.size()) throw UsageError("merge map must cover every atom");
  std::vector<double> weights(target_atoms, 0.0);
  std::vector<std::optional<Point>> values(target_atoms);
  for (std::size_t a = 0; a < space.size(); ++a) {
    const std::size_t b = merge[a];
    if (b >= target_atoms) throw UsageError("merge target out of range");
    weights[b] += space.weight(a);
    if (!values[b]) {
      values[b] = xi.value(a);
    } else if (!(*values[b] == xi.value(a))) {
      throw UsageError("function is not constant on the fiber of merged atom " + std::to_string(b));
    }
  }
  std::vector<Point> out;
  for (std::size_t b = 0; b < target_atoms; ++b) {
    if (!values[b]) throw UsageError("merge map is not surjective");
    out.push_back(*values[b]);
  }
  return SimpleFunction(FiniteMeasureSpace(std::move(weights)), xi.model(), std::move(out));
}

namespace {

void require_partition(const FiniteMeasureSpace& space, const Partition& p) {
  if (p.assignment.size() != space.size()) throw UsageError("partition must assign every atom");
  for (std::size_t i : p.assignment) {
    if (i >= p.index_size) throw UsageError("partition index out of range");
  }
}

}  // namespace

double partition_delta(const FiniteMeasureSpace& space, const Partition& p1, const Partition& p2) {
  require_partition(space, p1);
  require_partition(space, p2);
  if (p1.index_size != p2.index_size) throw UsageError("partitions have different index sets");
  // An atom sent to different cells lies in two of the symmetric differences.
  double delta = 0.0;
  for (std::size_t a = 0; a < space.size(); ++a) {
    if (p1.assignment[a] != p2.assignment[a]) delta += 2.0 * space.weight(a);
  }
  return delta;
}

Partition compose(std::span<const std::size_t> map, const Partition& p, std::size_t target_size) {
  if (map.size() != p.index_size) throw UsageError("relabeling map must cover the index set");
  Partition out{target_size, {}};
  out.assignment.reserve(p.assignment.size());
  for (std::size_t i : p.assignment) {
    if (map[i] >= target_size) throw UsageError("relabeling target out of range");
    out.assignment.push_back(map[i]);
  }
  return out;
}

RefinementResult refines(const FiniteMeasureSpace& space, const Partition& p1,
                         const Partition& p2, double eps) {
  if (!(eps >= 0.0)) throw UsageError("refinement tolerance must be nonnegative");
  require_partition(space, p1);
  require_partition(space, p2);
  if (p2.index_size == 0) throw UsageError("target partition has an empty index set");
  std::vector<double> overlap(p1.index_size * p2.index_size, 0.0);
  for (std::size_t a = 0; a < space.size(); ++a) {
    overlap[p1.assignment[a] * p2.index_size + p2.assignment[a]] += space.weight(a);
  }
  RefinementResult result;
  result.witness.resize(p1.index_size, 0);
  for (std::size_t i = 0; i < p1.index_size; ++i) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < p2.index_size; ++j) {
      if (overlap[i * p2.index_size + j] > overlap[i * p2.index_size + best]) best = j;
    }
    result.witness[i] = best;
  }
  result.delta = partition_delta(space, p2, compose(result.witness, p1, p2.index_size));
  result.refines = result.delta <= eps;
  return result;
}

std::vector<Partition> refining_sequence(const FiniteMeasureSpace& space,
                                         const std::vector<std::vector<std::size_t>>& subsets) {
  if (subsets.empty()) throw UsageError("refining sequence needs at least one subset");
  if (subsets.size() > 24) throw ResourceError("refining sequence limited to 24 subsets");
  std::vector<std::size_t> code(space.size(), 0);
  std::vector<Partition> out;
  for (std::size_t n = 0; n < subsets.size(); ++n) {
    for (std::size_t a : subsets[n]) {
      if (a >= space.size()) throw UsageError("subset refers to a missing atom");
      code[a] |= std::size_t{1} << n;
    }
    out.push_back(Partition{std::size_t{1} << (n + 1), code});
  }
  return out;
}

LevelPartition level_partition(const SimpleFunction& xi) {
  LevelPartition out;
  out.partition.assignment.reserve(xi.space().size());
  for (const auto& v : xi.values()) {
    auto it = std::find(out.levels.begin(), out.levels.end(), v);
    if (it == out.levels.end()) {
      out.levels.push_back(v);
      it = std::prev(out.levels.end());
    }
    out.partition.assignment.push_back(static_cast<std::size_t>(it - out.levels.begin()));
  }
  out.partition.index_size = out.levels.size();
  return out;
}

SimpleApproximation approximate_by_simple(const SimpleFunction& xi, std::span<const Point> centers,
                                          double eps) {
  if (!(eps > 0.0)) throw UsageError("approximation radius must be positive");
  if (centers.empty()) throw UsageError("approximation needs at least one center");
  const auto& space = xi.space();
  std::vector<Point> values;
  std::vector<std::size_t> cell;
  for (std::size_t a = 0; a < space.size(); ++a) {
    double nearest = std::numeric_limits<double>::infinity();
    std::optional<std::size_t> chosen;
    for (std::size_t i = 0; i < centers.size(); ++i) {
      const double d = distance(xi.model(), xi.value(a), centers[i]);
      nearest = std::min(nearest, d);
      if (d <= eps) {
        chosen = i;
        break;
      }
    }
    if (!chosen) throw CoverageError(a, space.label(a), nearest);
    values.push_back(centers[*chosen]);
    cell.push_back(*chosen);
  }
  SimpleApproximation out{SimpleFunction(space, xi.model(), std::move(values)), std::move(cell),
                          0.0, eps * std::sqrt(space.total() + 1.0)};
  out.distance = l2_distance(xi, out.eta);
  return out;
}

AdmissibleApproximation admissible_approximation(const SimpleFunction& xi,
                                                 std::span<const ApproximationStage> stages,
                                                 double eps) {
  if (!(eps > 0.0)) throw UsageError("approximation target must be positive");
  if (stages.empty()) throw UsageError("admissible approximation needs at least one stage");
  const auto& space = xi.space();
  const auto& model = xi.model();
  const LevelPartition level = level_partition(xi);

  AdmissibleApproximation out{0, 0, xi, 0.0, 0.0, 0.0, 0.0, 0.0};
  out.eps_prime = eps / std::sqrt(2.0 * space.total());
  for (std::size_t i = 0; i < level.levels.size(); ++i) {
    for (std::size_t j = i + 1; j < level.levels.size(); ++j) {
      out.diameter = std::max(out.diameter, distance(model, level.levels[i], level.levels[j]));
    }
  }
  const double spread = out.diameter + out.eps_prime;
  out.eps_double_prime = spread > 0.0 ? eps * eps / (2.0 * spread * spread)
                                      : std::numeric_limits<double>::infinity();

  // Stage 1: first stage whose accumulated samples eps'-cover the image.
  std::vector<Point> pool;
  std::vector<std::optional<Point>> snap(level.levels.size());
  std::vector<double> snap_distance(level.levels.size(), std::numeric_limits<double>::infinity());
  std::optional<std::size_t> cover;
  for (std::size_t m = 0; m < stages.size() && !cover; ++m) {
    for (const auto& p : stages[m].points) {
      check_compatible(model, p);
      pool.push_back(p);
      for (std::size_t l = 0; l < level.levels.size(); ++l) {
        const double d = distance(model, level.levels[l], p);
        if (d < snap_distance[l]) {
          snap_distance[l] = d;
          snap[l] = p;
        }
      }
    }
    if (std::all_of(snap_distance.begin(), snap_distance.end(),
                    [&](double d) { return d <= out.eps_prime; })) {
      cover = m;
    }
  }
  if (!cover) {
    double achieved = 0.0;
    for (std::size_t a = 0; a < space.size(); ++a) {
      const double d = snap_distance[level.partition.assignment[a]];
      achieved += space.weight(a) * d * d;
    }
    throw ApproximationFailure("stage samples never cover the image of the function",
                               std::sqrt(achieved));
  }
  out.cover_index = *cover;

  // Stage 2: first partition at or after the cover stage that eps''-refines
  // the level partition of xi.
  auto build = [&](std::size_t m, const RefinementResult& r) {
    std::vector<Point> values;
    for (std::size_t a = 0; a < space.size(); ++a) {
      values.push_back(*snap[r.witness[stages[m].partition.assignment[a]]]);
    }
    return SimpleFunction(space, model, std::move(values));
  };
  for (std::size_t m = *cover; m < stages.size(); ++m) {
    const RefinementResult r = refines(space, stages[m].partition, level.partition,
                                       std::numeric_limits<double>::infinity());
    if (r.delta < out.eps_double_prime) {
      out.index = m;
      out.delta = r.delta;
      out.eta = build(m, r);
      out.distance = l2_distance(xi, out.eta);
      if (!(out.distance < eps)) {
        throw ApproximationFailure("two-stage approximation missed its target", out.distance);
      }
      return out;
    }
    if (m + 1 == stages.size()) {
      throw ApproximationFailure("partition sequence never refines the level partition",
                                 l2_distance(xi, build(m, r)));
    }
  }
  throw ApproximationFailure("partition sequence exhausted", std::numeric_limits<double>::infinity());
}

}  // namespace hadamard
