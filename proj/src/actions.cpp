#include "hadamard/actions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include "hadamard/errors.hpp"
#include "hadamard/parallel.hpp"

namespace hadamard {

namespace {

void require_product(const SpaceModel& model, std::size_t parts, const char* what) {
  if (model.kind() != ModelKind::Product) throw UsageError(std::string(what) + " acts on product models only");
  if (model.size() != parts) {
    throw UsageError(std::string(what) + " has " + std::to_string(parts) + " parts but the model has " +
                     std::to_string(model.size()) + " factors");
  }
}

std::vector<Eigen::Index> factor_offsets(const SpaceModel& model) {
  std::vector<Eigen::Index> offsets{0};
  for (const auto& f : model.factors()) offsets.push_back(offsets.back() + static_cast<Eigen::Index>(f.model.dim()));
  return offsets;
}

void check_permutation(const IsometryDescriptor& phi, const SpaceModel& model) {
  const auto& perm = phi.permutation();
  require_product(model, perm.size(), "atom permutation");
  for (std::size_t i = 0; i < perm.size(); ++i) {
    const auto& a = model.factors()[i];
    const auto& b = model.factors()[perm[i]];
    if (a.weight != b.weight || !(a.model == b.model)) {
      throw UsageError("atom permutation moves atom " + std::to_string(i) + " onto an atom of different weight");
    }
  }
}

}  // namespace

IsometryDescriptor IsometryDescriptor::spd_congruence(Mat t, const Tolerances& tol) {
  if (t.rows() != t.cols() || t.rows() == 0) throw UsageError("congruence matrix must be square");
  if (std::abs(std::abs(t.determinant()) - 1.0) > tol.unimodular_det) {
    throw DomainError("congruence matrix must have |det| = 1");
  }
  IsometryDescriptor d;
  d.kind_ = IsometryKind::SpdCongruence;
  d.matrix_ = std::move(t);
  return d;
}

IsometryDescriptor IsometryDescriptor::euclidean_affine(Mat q, Vec b, const Tolerances& tol) {
  if (q.rows() != q.cols() || q.rows() != b.size()) throw UsageError("affine isometry needs square Q and matching b");
  const Mat defect = q.transpose() * q - Mat::Identity(q.rows(), q.cols());
  if (q.rows() > 0 && defect.cwiseAbs().maxCoeff() > tol.isometry_defect) {
    throw DomainError("linear part of an affine isometry must be orthogonal");
  }
  IsometryDescriptor d;
  d.kind_ = IsometryKind::EuclideanAffine;
  d.matrix_ = std::move(q);
  d.shift_ = std::move(b);
  return d;
}

IsometryDescriptor IsometryDescriptor::componentwise(std::vector<IsometryDescriptor> parts) {
  IsometryDescriptor d;
  d.kind_ = IsometryKind::ProductComponentwise;
  d.parts_ = std::make_shared<const std::vector<IsometryDescriptor>>(std::move(parts));
  return d;
}

IsometryDescriptor IsometryDescriptor::atom_permutation(std::vector<std::size_t> perm) {
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t p : perm) {
    if (p >= perm.size() || seen[p]) throw UsageError("atom permutation is not a bijection");
    seen[p] = true;
  }
  IsometryDescriptor d;
  d.kind_ = IsometryKind::AtomPermutation;
  d.perm_ = std::move(perm);
  return d;
}

IsometryDescriptor IsometryDescriptor::piecewise_dial(std::vector<IsometryDescriptor> per_atom) {
  IsometryDescriptor d = componentwise(std::move(per_atom));
  d.kind_ = IsometryKind::PiecewiseDial;
  return d;
}

IsometryDescriptor IsometryDescriptor::composite(std::vector<IsometryDescriptor> parts) {
  IsometryDescriptor d = componentwise(std::move(parts));
  d.kind_ = IsometryKind::Composite;
  return d;
}

std::string IsometryDescriptor::describe() const {
  std::ostringstream out;
  auto matrix_text = [&out](const Mat& m) {
    out << '[';
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      out << (i ? ";" : "");
      for (Eigen::Index j = 0; j < m.cols(); ++j) out << (j ? "," : "") << m(i, j);
    }
    out << ']';
  };
  auto list_text = [&out, this](const char* tag) {
    out << tag << '(';
    for (std::size_t i = 0; i < parts().size(); ++i) out << (i ? ", " : "") << parts()[i].describe();
    out << ')';
  };
  switch (kind_) {
    case IsometryKind::Identity:
      out << "id";
      break;
    case IsometryKind::SpdCongruence:
      out << "congruence";
      matrix_text(matrix_);
      break;
    case IsometryKind::EuclideanAffine:
      out << "affine";
      matrix_text(matrix_);
      out << '+';
      matrix_text(shift_.transpose());
      break;
    case IsometryKind::ProductComponentwise:
      list_text("componentwise");
      break;
    case IsometryKind::AtomPermutation:
      out << "permutation(";
      for (std::size_t i = 0; i < perm_.size(); ++i) out << (i ? "," : "") << perm_[i];
      out << ')';
      break;
    case IsometryKind::PiecewiseDial:
      list_text("dial");
      break;
    case IsometryKind::Composite:
      list_text("compose");
      break;
  }
  return out.str();
}

Point apply(const IsometryDescriptor& phi, const SpaceModel& model, const Point& x) {
  check_compatible(model, x);
  switch (phi.kind()) {
    case IsometryKind::Identity:
      return x;
    case IsometryKind::SpdCongruence: {
      if (model.kind() != ModelKind::Spd || static_cast<std::size_t>(phi.matrix().rows()) != model.size()) {
        throw UsageError("congruence of size " + std::to_string(phi.matrix().rows()) + " on " + model.name());
      }
      return Point::matrix(linalg::symmetrize(phi.matrix() * x.mat() * phi.matrix().transpose()));
    }
    case IsometryKind::EuclideanAffine: {
      if (model.kind() != ModelKind::Euclidean || static_cast<std::size_t>(phi.shift().size()) != model.size()) {
        throw UsageError("affine isometry of size " + std::to_string(phi.shift().size()) + " on " + model.name());
      }
      return Point::vector(phi.matrix() * x.vec() + phi.shift());
    }
    case IsometryKind::ProductComponentwise:
    case IsometryKind::PiecewiseDial: {
      require_product(model, phi.parts().size(), "componentwise isometry");
      std::vector<Point> out;
      out.reserve(model.size());
      for (std::size_t i = 0; i < model.size(); ++i) {
        out.push_back(apply(phi.parts()[i], model.factors()[i].model, x.parts()[i]));
      }
      return Point::product(std::move(out));
    }
    case IsometryKind::AtomPermutation: {
      check_permutation(phi, model);
      std::vector<Point> out(model.size());
      for (std::size_t i = 0; i < model.size(); ++i) out[phi.permutation()[i]] = x.parts()[i];
      return Point::product(std::move(out));
    }
    case IsometryKind::Composite: {
      Point y = x;
      for (auto it = phi.parts().rbegin(); it != phi.parts().rend(); ++it) y = apply(*it, model, y);
      return y;
    }
  }
  return x;
}

SimpleFunction apply(const IsometryDescriptor& phi, const SimpleFunction& xi) {
  const Point p = apply(phi, xi.product_model(), xi.as_point());
  return SimpleFunction::from_point(xi.space(), xi.model(), p);
}

IsometryDescriptor inverse(const IsometryDescriptor& phi) {
  switch (phi.kind()) {
    case IsometryKind::Identity:
      return phi;
    case IsometryKind::SpdCongruence:
      return IsometryDescriptor::spd_congruence(phi.matrix().inverse());
    case IsometryKind::EuclideanAffine: {
      const Mat qt = phi.matrix().transpose();
      return IsometryDescriptor::euclidean_affine(qt, -(qt * phi.shift()));
    }
    case IsometryKind::ProductComponentwise:
    case IsometryKind::PiecewiseDial: {
      std::vector<IsometryDescriptor> parts;
      for (const auto& p : phi.parts()) parts.push_back(inverse(p));
      return phi.kind() == IsometryKind::PiecewiseDial ? IsometryDescriptor::piecewise_dial(std::move(parts))
                                                       : IsometryDescriptor::componentwise(std::move(parts));
    }
    case IsometryKind::AtomPermutation: {
      std::vector<std::size_t> inv(phi.permutation().size());
      for (std::size_t i = 0; i < inv.size(); ++i) inv[phi.permutation()[i]] = i;
      return IsometryDescriptor::atom_permutation(std::move(inv));
    }
    case IsometryKind::Composite: {
      std::vector<IsometryDescriptor> parts;
      for (auto it = phi.parts().rbegin(); it != phi.parts().rend(); ++it) parts.push_back(inverse(*it));
      return IsometryDescriptor::composite(std::move(parts));
    }
  }
  return phi;
}

IsometryDescriptor compose(const IsometryDescriptor& phi, const IsometryDescriptor& psi) {
  return IsometryDescriptor::composite({phi, psi});
}

IsometryDescriptor compose_simplified(const IsometryDescriptor& phi, const IsometryDescriptor& psi) {
  if (phi.kind() == IsometryKind::Identity) return psi;
  if (psi.kind() == IsometryKind::Identity) return phi;
  if (phi.kind() == psi.kind()) {
    switch (phi.kind()) {
      case IsometryKind::SpdCongruence:
        if (phi.matrix().rows() == psi.matrix().rows()) {
          return IsometryDescriptor::spd_congruence(phi.matrix() * psi.matrix());
        }
        break;
      case IsometryKind::EuclideanAffine:
        if (phi.shift().size() == psi.shift().size()) {
          return IsometryDescriptor::euclidean_affine(phi.matrix() * psi.matrix(),
                                                      phi.matrix() * psi.shift() + phi.shift());
        }
        break;
      case IsometryKind::ProductComponentwise:
      case IsometryKind::PiecewiseDial:
        if (phi.parts().size() == psi.parts().size()) {
          std::vector<IsometryDescriptor> parts;
          for (std::size_t i = 0; i < phi.parts().size(); ++i) {
            parts.push_back(compose_simplified(phi.parts()[i], psi.parts()[i]));
          }
          return phi.kind() == IsometryKind::PiecewiseDial ? IsometryDescriptor::piecewise_dial(std::move(parts))
                                                           : IsometryDescriptor::componentwise(std::move(parts));
        }
        break;
      case IsometryKind::AtomPermutation:
        if (phi.permutation().size() == psi.permutation().size()) {
          std::vector<std::size_t> perm(psi.permutation().size());
          for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = phi.permutation()[psi.permutation()[i]];
          return IsometryDescriptor::atom_permutation(std::move(perm));
        }
        break;
      default:
        break;
    }
  }
  return compose(phi, psi);
}

Mat derivative(const IsometryDescriptor& phi, const SpaceModel& model, const Point& x) {
  check_compatible(model, x);
  const auto dim = static_cast<Eigen::Index>(model.dim());
  switch (phi.kind()) {
    case IsometryKind::Identity:
      return Mat::Identity(dim, dim);
    case IsometryKind::SpdCongruence: {
      // S -> Q S Q^T with Q = A'^{-1/2} T A^{1/2}, which is orthogonal.
      const Point y = apply(phi, model, x);
      const Mat q = linalg::sym_inv_sqrt(y.mat()) * phi.matrix() * linalg::sym_sqrt(x.mat());
      const std::size_t n = model.size();
      Mat out(dim, dim);
      for (Eigen::Index j = 0; j < dim; ++j) {
        const Mat s = spd::coords_to_sym(Vec::Unit(dim, j), n, model.unimodular());
        out.col(j) = spd::sym_to_coords(linalg::symmetrize(q * s * q.transpose()), model.unimodular());
      }
      return out;
    }
    case IsometryKind::EuclideanAffine:
      apply(phi, model, x);
      return phi.matrix();
    case IsometryKind::ProductComponentwise:
    case IsometryKind::PiecewiseDial: {
      require_product(model, phi.parts().size(), "componentwise isometry");
      const auto off = factor_offsets(model);
      Mat out = Mat::Zero(dim, dim);
      for (std::size_t i = 0; i < model.size(); ++i) {
        const Eigen::Index len = off[i + 1] - off[i];
        out.block(off[i], off[i], len, len) = derivative(phi.parts()[i], model.factors()[i].model, x.parts()[i]);
      }
      return out;
    }
    case IsometryKind::AtomPermutation: {
      check_permutation(phi, model);
      const auto off = factor_offsets(model);
      Mat out = Mat::Zero(dim, dim);
      for (std::size_t i = 0; i < model.size(); ++i) {
        const Eigen::Index len = off[i + 1] - off[i];
        out.block(off[phi.permutation()[i]], off[i], len, len).setIdentity();
      }
      return out;
    }
    case IsometryKind::Composite: {
      Mat out = Mat::Identity(dim, dim);
      Point y = x;
      for (auto it = phi.parts().rbegin(); it != phi.parts().rend(); ++it) {
        out = derivative(*it, model, y) * out;
        y = apply(*it, model, y);
      }
      return out;
    }
  }
  return Mat::Identity(dim, dim);
}

namespace {

struct Pullback {
  FiberPoint preimage;
  Mat transform;  // D phi at the preimage, extended by 1 on the t-line
};

Pullback pull_back(const IsometryDescriptor& phi, const SpaceModel& model, const FiberPoint& p) {
  Pullback out;
  out.preimage = {apply(inverse(phi), model, p.x), p.t};
  const auto dim = static_cast<Eigen::Index>(model.dim());
  out.transform = Mat::Identity(dim + 1, dim + 1);
  out.transform.topLeftCorner(dim, dim) = derivative(phi, model, out.preimage.x);
  return out;
}

}  // namespace

CliffordElement induced_automorphism(const IsometryDescriptor& phi, const SpaceModel& model,
                                     const Point& x0, const TestFunction& f, const FiberPoint& p) {
  const Pullback pb = pull_back(phi, model, p);
  return clifford_transform(pb.transform, bott_eval(f, model, x0, pb.preimage));
}

ScalarVector induced_automorphism_sv(const IsometryDescriptor& phi, const SpaceModel& model,
                                     const Point& x0, const TestFunction& f, const FiberPoint& p) {
  const Pullback pb = pull_back(phi, model, p);
  return clifford_transform(pb.transform, bott_eval_sv(f, model, x0, pb.preimage));
}

double length_function(const SpaceModel& model, const Point& x, const IsometryDescriptor& phi) {
  return distance(model, x, apply(phi, model, x));
}

double length_function(const SimpleFunction& xi, const IsometryDescriptor& phi) {
  return l2_distance(xi, apply(phi, xi));
}

IsometryDescriptor continuum_lift(const IsometryDescriptor& phi, const FiniteMeasureSpace& space) {
  return IsometryDescriptor::piecewise_dial(std::vector<IsometryDescriptor>(space.size(), phi));
}

DeformedIsometry deform(const IsometryDescriptor& phi, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw UsageError("deformation parameter must lie in [0, 1]");
  return {phi, t};
}

IsometryDescriptor deformed_dial(const DeformedIsometry& h, const FiniteMeasureSpace& space) {
  if (!space.has_intervals()) throw UsageError("deformation needs a space of sub-intervals of [0, 1]");
  std::vector<IsometryDescriptor> parts;
  parts.reserve(space.size());
  for (std::size_t k = 0; k < space.size(); ++k) {
    const auto [a, b] = space.interval(k);
    if (a < h.cut && h.cut < b) throw UsageError("cut falls inside an atom; refine the space first");
    parts.push_back(b <= h.cut ? h.base : IsometryDescriptor::identity());
  }
  return IsometryDescriptor::piecewise_dial(std::move(parts));
}

SimpleFunction apply_deformed(const DeformedIsometry& h, const SimpleFunction& xi) {
  const double cut[] = {h.cut};
  auto [finer, parent] = xi.space().refined_at(cut);
  const SimpleFunction refined = xi.refined(finer, parent);
  return apply(deformed_dial(h, refined.space()), refined);
}

double deformed_length_integral(const IsometryDescriptor& phi, const SimpleFunction& xi, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw UsageError("deformation parameter must lie in [0, 1]");
  if (!xi.space().has_intervals()) throw UsageError("deformation needs a space of sub-intervals of [0, 1]");
  double total = 0.0;
  for (std::size_t k = 0; k < xi.space().size(); ++k) {
    const auto [a, b] = xi.space().interval(k);
    const double covered = std::min(b, t) - a;
    if (covered <= 0.0) continue;
    const double l = length_function(xi.model(), xi.value(k), phi);
    total += covered * l * l;
  }
  return std::sqrt(total);
}

namespace {

void flatten(const Point& p, std::vector<double>& out) {
  switch (p.kind()) {
    case ModelKind::Euclidean:
      out.insert(out.end(), p.vec().data(), p.vec().data() + p.vec().size());
      break;
    case ModelKind::Spd:
      out.insert(out.end(), p.mat().data(), p.mat().data() + p.mat().size());
      break;
    case ModelKind::Product:
      for (const auto& q : p.parts()) flatten(q, out);
      break;
  }
}

std::vector<long long> probe_key(const IsometryDescriptor& g, const SpaceModel& model,
                                 std::span<const Point> probes) {
  std::vector<double> coords;
  for (const auto& p : probes) flatten(apply(g, model, p), coords);
  std::vector<long long> key(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) key[i] = std::llround(coords[i] * 1e8);
  return key;
}

}  // namespace

PropernessProfile properness_profile(std::span<const IsometryDescriptor> generators,
                                     const SpaceModel& model, const Point& x, std::size_t radius,
                                     double support_radius, std::span<const Point> probes,
                                     std::size_t max_elements) {
  if (radius > 8) throw ResourceError("word enumeration is limited to radius 8");
  if (!(support_radius > 0.0)) throw UsageError("support radius must be positive");
  std::vector<IsometryDescriptor> steps(generators.begin(), generators.end());
  for (const auto& g : generators) steps.push_back(inverse(g));
  std::vector<Point> probe_set(probes.begin(), probes.end());
  if (probe_set.empty()) probe_set.push_back(x);

  auto hat = [support_radius](double u) { return std::max(0.0, 1.0 - u / support_radius); };
  auto summarize = [&](std::size_t k, const std::vector<IsometryDescriptor>& words) {
    const auto lengths = parallel::map<double>(words.size(), [&](std::size_t i) {
      return length_function(model, x, words[i]);
    });
    PropernessRow row;
    row.k = k;
    row.words = words.size();
    row.min_length = parallel::min_of(lengths);
    row.max_length = parallel::max_of(lengths);
    std::size_t free = 0;
    for (double l : lengths) {
      if (l > 2.0 * support_radius) ++free;
      row.max_overlap = std::max(row.max_overlap, hat(0.5 * l) * hat(0.5 * l));
    }
    row.overlap_free_fraction = static_cast<double>(free) / static_cast<double>(words.size());
    return row;
  };

  PropernessProfile profile;
  std::set<std::vector<long long>> seen;
  std::vector<IsometryDescriptor> frontier{IsometryDescriptor::identity()};
  seen.insert(probe_key(frontier.front(), model, probe_set));
  profile.rows.push_back(summarize(0, frontier));
  for (std::size_t k = 1; k <= radius; ++k) {
    std::vector<IsometryDescriptor> next;
    for (const auto& g : frontier) {
      for (const auto& s : steps) {
        IsometryDescriptor h = compose_simplified(s, g);
        if (seen.insert(probe_key(h, model, probe_set)).second) {
          if (seen.size() > max_elements) {
            throw ResourceError("word ball exceeds " + std::to_string(max_elements) + " elements at length " +
                                std::to_string(k));
          }
          next.push_back(std::move(h));
        }
      }
    }
    if (next.empty()) break;
    profile.rows.push_back(summarize(k, next));
    frontier = std::move(next);
  }
  profile.elements = seen.size();
  return profile;
}

InvarianceProfile asymptotic_invariance_profile(const IsometryDescriptor& phi, const SpaceModel& model,
                                                const Point& x0, const TestFunction& f,
                                                std::span<const double> s_values,
                                                std::span<const double> cuts,
                                                const FiniteMeasureSpace& space,
                                                std::span<const ContinuumFiber> fibers,
                                                const Tolerances& tol) {
  if (s_values.empty()) throw UsageError("need at least one rescaling factor");
  for (std::size_t i = 0; i < s_values.size(); ++i) {
    if (!(s_values[i] > 0.0) || (i > 0 && !(s_values[i] > s_values[i - 1]))) {
      throw UsageError("rescaling factors must be positive and increasing");
    }
  }
  for (const auto& fiber : fibers) {
    if (!(fiber.xi.space() == space) || !(fiber.xi.model() == model)) {
      throw UsageError("fiber samples must live on the profile's measure space and model");
    }
  }

  // Per (cut, fiber): the Clifford vector at the fiber, the one at its
  // preimage under H(phi, t), and the derivative transform between them.
  struct Sample {
    Vec direct;
    Vec pulled;
    Mat transform;
  };
  const IsometryDescriptor phi_inv = inverse(phi);
  std::vector<double> radii;
  const std::size_t per_cut = fibers.size();
  std::vector<Sample> samples(cuts.size() * per_cut);
  for (std::size_t c = 0; c < cuts.size(); ++c) {
    const double cut[] = {cuts[c]};
    auto [finer, parent] = space.refined_at(cut);
    const SimpleFunction base = SimpleFunction::constant(finer, model, x0);
    const SpaceModel pm = base.product_model();
    const Point xi0 = base.as_point();
    const IsometryDescriptor forward = deformed_dial(deform(phi, cuts[c]), finer);
    const IsometryDescriptor backward = deformed_dial(deform(phi_inv, cuts[c]), finer);
    radii.push_back(distance(pm, xi0, apply(forward, pm, xi0)));
    auto computed = parallel::map<Sample>(per_cut, [&](std::size_t i) {
      const Point x = fibers[i].xi.refined(finer, parent).as_point();
      const FiberPoint p{x, fibers[i].t};
      const FiberPoint pre{apply(backward, pm, x), fibers[i].t};
      const auto dim = static_cast<Eigen::Index>(pm.dim());
      Sample s;
      s.direct = clifford_vector(pm, xi0, p);
      s.pulled = clifford_vector(pm, xi0, pre);
      s.transform = Mat::Identity(dim + 1, dim + 1);
      s.transform.topLeftCorner(dim, dim) = derivative(forward, pm, pre.x);
      return s;
    });
    std::move(computed.begin(), computed.end(), samples.begin() + static_cast<std::ptrdiff_t>(c * per_cut));
  }

  InvarianceProfile profile;
  profile.radius = distance(model, x0, apply(phi, model, x0));
  std::vector<double> r_grid = radii;
  const int steps = 256;
  for (int j = 0; j <= steps; ++j) r_grid.push_back(profile.radius * j / steps);

  for (double s : s_values) {
    const TestFunction g = f.rescale(s);
    InvarianceRow row;
    row.s = s;
    for (double r : r_grid) row.bound = std::max(row.bound, base_point_bound(g, r));
    const auto defects = parallel::map<double>(samples.size(), [&](std::size_t i) {
      const ScalarVector direct = functional_calculus_sv(g, samples[i].direct);
      const ScalarVector moved = clifford_transform(samples[i].transform, functional_calculus_sv(g, samples[i].pulled));
      return (direct - moved).norm();
    });
    row.measured = defects.empty() ? 0.0 : std::max(0.0, parallel::max_of(defects));
    row.pass = row.measured <= row.bound + tol.bott_bound;
    profile.rows.push_back(row);
  }
  const auto& first = profile.rows.front();
  const auto& last = profile.rows.back();
  profile.decaying = last.s / first.s >= 100.0 && last.bound <= 0.2 * first.bound;
  return profile;
}

}  // namespace hadamard
