#include "hadamard/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hadamard/errors.hpp"

namespace hadamard {

struct SpaceModel::Node {
  ModelKind kind;
  std::size_t size = 0;
  bool unimodular = false;
  std::vector<ProductFactor> factors;
  std::size_t dim = 0;
};

SpaceModel SpaceModel::euclidean(std::size_t dim) {
  if (dim < 1) throw UsageError("euclidean model requires dimension >= 1");
  auto node = std::make_shared<Node>();
  node->kind = ModelKind::Euclidean;
  node->size = dim;
  node->dim = dim;
  return SpaceModel(std::move(node));
}

SpaceModel SpaceModel::spd(std::size_t n, bool unimodular) {
  if (n < 1) throw UsageError("spd model requires n >= 1");
  if (unimodular && n < 2) throw UsageError("unimodular spd model requires n >= 2");
  auto node = std::make_shared<Node>();
  node->kind = ModelKind::Spd;
  node->size = n;
  node->unimodular = unimodular;
  node->dim = spd::tangent_dim(n, unimodular);
  return SpaceModel(std::move(node));
}

SpaceModel SpaceModel::product(std::vector<ProductFactor> factors) {
  if (factors.empty()) throw UsageError("product model needs at least one factor");
  auto node = std::make_shared<Node>();
  node->kind = ModelKind::Product;
  node->size = factors.size();
  for (const auto& f : factors) {
    if (!(f.weight > 0.0) || !std::isfinite(f.weight)) {
      throw UsageError("product weights must be positive and finite");
    }
    node->dim += f.model.dim();
  }
  node->factors = std::move(factors);
  return SpaceModel(std::move(node));
}

SpaceModel SpaceModel::power(const SpaceModel& factor, std::span<const double> weights) {
  std::vector<ProductFactor> factors;
  factors.reserve(weights.size());
  for (double w : weights) factors.push_back({factor, w});
  return product(std::move(factors));
}

ModelKind SpaceModel::kind() const { return node_->kind; }
std::size_t SpaceModel::dim() const { return node_->dim; }
std::size_t SpaceModel::size() const { return node_->size; }
bool SpaceModel::unimodular() const { return node_->unimodular; }
const std::vector<ProductFactor>& SpaceModel::factors() const { return node_->factors; }

std::string SpaceModel::name() const {
  std::ostringstream out;
  switch (kind()) {
    case ModelKind::Euclidean:
      out << "euclidean:" << size();
      break;
    case ModelKind::Spd:
      out << (unimodular() ? "spd1:" : "spd:") << size();
      break;
    case ModelKind::Product: {
      out << "product[";
      bool first = true;
      for (const auto& f : factors()) {
        if (!first) out << ',';
        first = false;
        out << f.model.name() << '@' << f.weight;
      }
      out << ']';
      break;
    }
  }
  return out.str();
}

bool SpaceModel::operator==(const SpaceModel& other) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind() || size() != other.size() || unimodular() != other.unimodular()) {
    return false;
  }
  if (kind() != ModelKind::Product) return true;
  for (std::size_t i = 0; i < size(); ++i) {
    if (factors()[i].weight != other.factors()[i].weight) return false;
    if (!(factors()[i].model == other.factors()[i].model)) return false;
  }
  return true;
}

Point Point::vector(Vec coords) {
  Point p;
  p.kind_ = ModelKind::Euclidean;
  p.vec_ = std::move(coords);
  return p;
}

Point Point::matrix(Mat spd) {
  Point p;
  p.kind_ = ModelKind::Spd;
  p.mat_ = std::move(spd);
  return p;
}

Point Point::product(std::vector<Point> parts) {
  Point p;
  p.kind_ = ModelKind::Product;
  p.parts_ = std::move(parts);
  return p;
}

bool Point::operator==(const Point& other) const {
  if (kind_ != other.kind_) return false;
  switch (kind_) {
    case ModelKind::Euclidean:
      return vec_.size() == other.vec_.size() && vec_ == other.vec_;
    case ModelKind::Spd:
      return mat_.rows() == other.mat_.rows() && mat_.cols() == other.mat_.cols() &&
             mat_ == other.mat_;
    case ModelKind::Product:
      return parts_ == other.parts_;
  }
  return false;
}

namespace spd {

std::size_t tangent_dim(std::size_t n, bool unimodular) {
  return n * (n + 1) / 2 - (unimodular ? 1 : 0);
}

Vec sym_to_coords(const Mat& s, bool unimodular) {
  const auto n = static_cast<std::size_t>(s.rows());
  Vec out(static_cast<Eigen::Index>(tangent_dim(n, unimodular)));
  Eigen::Index k = 0;
  if (unimodular) {
    // Helmert coordinates of the diagonal, which has zero trace.
    double prefix = 0.0;
    for (std::size_t j = 0; j + 1 < n; ++j) {
      prefix += s(j, j);
      const double m = static_cast<double>(j + 1);
      out(k++) = (prefix - m * s(j + 1, j + 1)) / std::sqrt(m * (m + 1.0));
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) out(k++) = s(i, i);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) out(k++) = std::numbers::sqrt2 * s(i, j);
  }
  return out;
}

Mat coords_to_sym(const Vec& coords, std::size_t n, bool unimodular) {
  if (static_cast<std::size_t>(coords.size()) != tangent_dim(n, unimodular)) {
    throw UsageError("tangent coordinate vector has wrong length");
  }
  Mat s = Mat::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  Eigen::Index k = 0;
  if (unimodular) {
    for (std::size_t j = 0; j + 1 < n; ++j) {
      const double m = static_cast<double>(j + 1);
      const double c = coords(k++) / std::sqrt(m * (m + 1.0));
      for (std::size_t i = 0; i <= j; ++i) s(i, i) += c;
      s(j + 1, j + 1) -= m * c;
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) s(i, i) = coords(k++);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      s(i, j) = s(j, i) = coords(k++) / std::numbers::sqrt2;
    }
  }
  return s;
}

}  // namespace spd

namespace {

// A^{1/2} and A^{-1/2} from one eigendecomposition.
struct SpdFrame {
  Mat sqrt;
  Mat inv_sqrt;
};

SpdFrame frame(const Mat& a) {
  const auto eig = linalg::eigh(a);
  const double scale = eig.values.cwiseAbs().maxCoeff();
  if (!(eig.values.minCoeff() > default_tolerances().spd_min_eigenvalue_rel * scale)) {
    throw DomainError("matrix is not symmetric positive definite");
  }
  return {linalg::apply_spectral(eig, [](double x) { return std::sqrt(x); }),
          linalg::apply_spectral(eig, [](double x) { return 1.0 / std::sqrt(x); })};
}

double clamp_log(double x) { return std::log(std::max(x, default_tolerances().eigenvalue_clamp)); }

[[noreturn]] void mismatch(const SpaceModel& model, const char* what) {
  throw UsageError(std::string("point does not belong to model ") + model.name() + ": " + what);
}

}  // namespace

void check_compatible(const SpaceModel& model, const Point& p) {
  if (p.kind() != model.kind()) mismatch(model, "kind differs");
  switch (model.kind()) {
    case ModelKind::Euclidean:
      if (static_cast<std::size_t>(p.vec().size()) != model.size()) mismatch(model, "dimension");
      break;
    case ModelKind::Spd:
      if (static_cast<std::size_t>(p.mat().rows()) != model.size() ||
          p.mat().rows() != p.mat().cols()) {
        mismatch(model, "matrix size");
      }
      break;
    case ModelKind::Product:
      if (p.parts().size() != model.size()) mismatch(model, "factor count");
      for (std::size_t i = 0; i < model.size(); ++i) {
        check_compatible(model.factors()[i].model, p.parts()[i]);
      }
      break;
  }
}

void validate(const SpaceModel& model, const Point& p, const Tolerances& tol) {
  check_compatible(model, p);
  switch (model.kind()) {
    case ModelKind::Euclidean:
      if (!p.vec().allFinite()) throw DomainError("non-finite coordinates");
      break;
    case ModelKind::Spd:
      linalg::require_spd(p.mat(), tol.spd_min_eigenvalue_rel);
      if (model.unimodular() && std::abs(p.mat().determinant() - 1.0) > tol.unimodular_det) {
        throw DomainError("unimodular model requires determinant one");
      }
      break;
    case ModelKind::Product:
      for (std::size_t i = 0; i < model.size(); ++i) {
        validate(model.factors()[i].model, p.parts()[i], tol);
      }
      break;
  }
}

double distance(const SpaceModel& model, const Point& a, const Point& b) {
  check_compatible(model, a);
  check_compatible(model, b);
  switch (model.kind()) {
    case ModelKind::Euclidean:
      return (a.vec() - b.vec()).norm();
    case ModelKind::Spd: {
      if (a.mat() == b.mat()) {
        linalg::require_spd(a.mat(), default_tolerances().spd_min_eigenvalue_rel);
        return 0.0;
      }
      const SpdFrame fa = frame(a.mat());
      const Vec ev = linalg::eigh(fa.inv_sqrt * b.mat() * fa.inv_sqrt).values;
      double sum = 0.0;
      for (Eigen::Index i = 0; i < ev.size(); ++i) {
        const double l = clamp_log(ev(i));
        sum += l * l;
      }
      return std::sqrt(sum);
    }
    case ModelKind::Product: {
      double sum = 0.0;
      for (std::size_t i = 0; i < model.size(); ++i) {
        const auto& f = model.factors()[i];
        const double d = distance(f.model, a.parts()[i], b.parts()[i]);
        sum += f.weight * d * d;
      }
      return std::sqrt(sum);
    }
  }
  return 0.0;
}

Point geodesic(const SpaceModel& model, const Point& a, const Point& b, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw UsageError("geodesic parameter must lie in [0, 1]");
  check_compatible(model, a);
  check_compatible(model, b);
  if (t == 0.0) return a;
  if (t == 1.0) return b;
  switch (model.kind()) {
    case ModelKind::Euclidean:
      return Point::vector((1.0 - t) * a.vec() + t * b.vec());
    case ModelKind::Spd: {
      const SpdFrame fa = frame(a.mat());
      const Mat inner = linalg::apply_spectral(
          linalg::eigh(fa.inv_sqrt * b.mat() * fa.inv_sqrt),
          [t](double x) { return std::exp(t * clamp_log(x)); });
      return Point::matrix(linalg::symmetrize(fa.sqrt * inner * fa.sqrt));
    }
    case ModelKind::Product: {
      std::vector<Point> parts;
      parts.reserve(model.size());
      for (std::size_t i = 0; i < model.size(); ++i) {
        parts.push_back(geodesic(model.factors()[i].model, a.parts()[i], b.parts()[i], t));
      }
      return Point::product(std::move(parts));
    }
  }
  return a;
}

TangentVector log_map(const SpaceModel& model, const Point& base, const Point& x) {
  check_compatible(model, base);
  check_compatible(model, x);
  switch (model.kind()) {
    case ModelKind::Euclidean:
      return {base, x.vec() - base.vec()};
    case ModelKind::Spd: {
      const SpdFrame fb = frame(base.mat());
      const Mat s = linalg::sym_log(fb.inv_sqrt * x.mat() * fb.inv_sqrt,
                                    default_tolerances().eigenvalue_clamp);
      return {base, spd::sym_to_coords(s, model.unimodular())};
    }
    case ModelKind::Product: {
      Vec coords(static_cast<Eigen::Index>(model.dim()));
      Eigen::Index offset = 0;
      for (std::size_t i = 0; i < model.size(); ++i) {
        const auto& f = model.factors()[i];
        const Vec c = log_map(f.model, base.parts()[i], x.parts()[i]).coords;
        coords.segment(offset, c.size()) = std::sqrt(f.weight) * c;
        offset += c.size();
      }
      return {base, coords};
    }
  }
  return {base, Vec()};
}

Point exp_map(const SpaceModel& model, const TangentVector& v) {
  check_compatible(model, v.base);
  if (static_cast<std::size_t>(v.coords.size()) != model.dim()) {
    throw UsageError("tangent vector has wrong dimension for " + model.name());
  }
  switch (model.kind()) {
    case ModelKind::Euclidean:
      return Point::vector(v.base.vec() + v.coords);
    case ModelKind::Spd: {
      if (v.coords.isZero(0.0)) return v.base;
      const SpdFrame fb = frame(v.base.mat());
      const Mat s = spd::coords_to_sym(v.coords, model.size(), model.unimodular());
      return Point::matrix(linalg::symmetrize(fb.sqrt * linalg::sym_exp(s) * fb.sqrt));
    }
    case ModelKind::Product: {
      std::vector<Point> parts;
      parts.reserve(model.size());
      Eigen::Index offset = 0;
      for (std::size_t i = 0; i < model.size(); ++i) {
        const auto& f = model.factors()[i];
        const auto d = static_cast<Eigen::Index>(f.model.dim());
        TangentVector part{v.base.parts()[i], v.coords.segment(offset, d) / std::sqrt(f.weight)};
        parts.push_back(exp_map(f.model, part));
        offset += d;
      }
      return Point::product(std::move(parts));
    }
  }
  return v.base;
}

double comparison_angle(const SpaceModel& model, const Point& x, const Point& y, const Point& z,
                        const Tolerances& tol) {
  const double dxy = distance(model, x, y);
  const double dyz = distance(model, y, z);
  if (dxy < tol.degenerate_distance || dyz < tol.degenerate_distance) {
    throw DomainError("comparison angle needs x != y and z != y");
  }
  const double dxz = distance(model, x, z);
  const double c = (dxy * dxy + dyz * dyz - dxz * dxz) / (2.0 * dxy * dyz);
  return std::acos(std::clamp(c, -1.0, 1.0));
}

double cn_inequality_residual(const SpaceModel& model, const Point& p, const Point& q,
                              const Point& r) {
  const Point m = geodesic(model, q, r, 0.5);
  const double pq = distance(model, p, q);
  const double pr = distance(model, p, r);
  const double mp = distance(model, m, p);
  const double qr = distance(model, q, r);
  return pq * pq + pr * pr - 2.0 * mp * mp - 0.5 * qr * qr;
}

AngleProfile angle_between(const SpaceModel& model, const Point& base, const Point& x,
                           const Point& z, std::vector<double> scales, const Tolerances& tol) {
  if (scales.empty()) throw UsageError("angle_between needs at least one scale");
  for (double s : scales) {
    if (!(s > 0.0 && s <= 1.0)) throw UsageError("angle scales must lie in (0, 1]");
  }
  if (distance(model, base, x) < tol.degenerate_distance ||
      distance(model, base, z) < tol.degenerate_distance) {
    throw DomainError("angle_between needs x != base and z != base");
  }
  std::sort(scales.begin(), scales.end(), std::greater<>());
  AngleProfile profile;
  profile.scales = scales;
  for (double s : scales) {
    const Point xs = geodesic(model, base, x, s);
    const Point zs = geodesic(model, base, z, s);
    profile.angles.push_back(comparison_angle(model, xs, base, zs, tol));
  }
  for (std::size_t i = 1; i < profile.angles.size(); ++i) {
    if (profile.angles[i] > profile.angles[i - 1] + tol.angle_monotone) profile.monotone = false;
  }
  profile.angle = profile.angles.back();
  return profile;
}

Mat schoenberg_gram(const SpaceModel& model, const Point& base, std::span<const Point> pts) {
  const auto n = static_cast<Eigen::Index>(pts.size());
  Vec to_base(n);
  for (Eigen::Index i = 0; i < n; ++i) to_base(i) = distance(model, pts[i], base);
  Mat gram(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    gram(i, i) = to_base(i) * to_base(i);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double dij = distance(model, pts[i], pts[j]);
      gram(i, j) = gram(j, i) =
          0.5 * (to_base(i) * to_base(i) + to_base(j) * to_base(j) - dij * dij);
    }
  }
  return gram;
}

Mat tangent_cone_gram(const SpaceModel& model, const Point& base, std::span<const Point> pts,
                      double scale) {
  if (!(scale > 0.0 && scale <= 1.0)) throw UsageError("tangent cone scale must lie in (0, 1]");
  std::vector<Point> shrunk;
  shrunk.reserve(pts.size());
  for (const auto& p : pts) shrunk.push_back(geodesic(model, base, p, scale));
  return schoenberg_gram(model, base, shrunk) / (scale * scale);
}

double min_eigenvalue_ratio(const Mat& gram) {
  const Vec ev = linalg::eigh(gram).values;
  const double scale = ev.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  return ev.minCoeff() / scale;
}

Point origin(const SpaceModel& model) {
  switch (model.kind()) {
    case ModelKind::Euclidean:
      return Point::vector(Vec::Zero(static_cast<Eigen::Index>(model.size())));
    case ModelKind::Spd:
      return Point::matrix(Mat::Identity(static_cast<Eigen::Index>(model.size()),
                                         static_cast<Eigen::Index>(model.size())));
    case ModelKind::Product: {
      std::vector<Point> parts;
      for (const auto& f : model.factors()) parts.push_back(origin(f.model));
      return Point::product(std::move(parts));
    }
  }
  return {};
}

Point random_point(const SpaceModel& model, CounterRng& rng, double spread) {
  switch (model.kind()) {
    case ModelKind::Euclidean: {
      Vec v(static_cast<Eigen::Index>(model.size()));
      for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = spread * rng.normal();
      return Point::vector(v);
    }
    case ModelKind::Spd: {
      const std::size_t n = model.size();
      Vec c(static_cast<Eigen::Index>(spd::tangent_dim(n, false)));
      for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = spread * rng.normal();
      Mat a = linalg::sym_exp(spd::coords_to_sym(c, n, false));
      if (model.unimodular()) {
        a /= std::pow(a.determinant(), 1.0 / static_cast<double>(n));
      }
      return Point::matrix(linalg::symmetrize(a));
    }
    case ModelKind::Product: {
      std::vector<Point> parts;
      for (const auto& f : model.factors()) parts.push_back(random_point(f.model, rng, spread));
      return Point::product(std::move(parts));
    }
  }
  return {};
}

TangentVector random_tangent(const SpaceModel& model, const Point& base, CounterRng& rng,
                             double spread) {
  Vec c(static_cast<Eigen::Index>(model.dim()));
  for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = spread * rng.normal();
  return {base, c};
}

}  // namespace hadamard
