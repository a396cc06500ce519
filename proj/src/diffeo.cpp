#include "hadamard/diffeo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>

#include "hadamard/errors.hpp"
#include "hadamard/parallel.hpp"

namespace hadamard {

namespace {

long long integer_det(const IntMat& a) {
  return std::llround(a.cast<double>().determinant());
}

IntMat integer_inverse(const IntMat& a) {
  const IntMat inv = (a.cast<double>().inverse().array().round()).matrix().cast<long long>();
  if (a * inv != IntMat::Identity(a.rows(), a.cols())) throw DomainError("integer matrix has no integer inverse");
  return inv;
}

// The whole map as one integer matrix, when every part is linear.
std::optional<IntMat> linear_part(const TorusDiffeo& phi) {
  switch (phi.kind()) {
    case DiffeoKind::Linear:
      return phi.matrix();
    case DiffeoKind::Shear:
      if (phi.amplitude() == 0.0) return IntMat::Identity(phi.dim(), phi.dim());
      return std::nullopt;
    case DiffeoKind::Composite: {
      IntMat out = IntMat::Identity(phi.dim(), phi.dim());
      for (const auto& p : phi.parts()) {
        const auto m = linear_part(p);
        if (!m) return std::nullopt;
        out = out * *m;
      }
      return out;
    }
  }
  return std::nullopt;
}

double operator_norm(const Mat& m) {
  if (m.rows() == 2 && m.cols() == 2) {
    const double f = m.squaredNorm();
    const double d = m.determinant();
    return std::sqrt(0.5 * (f + std::sqrt(std::max(f * f - 4.0 * d * d, 0.0))));
  }
  return linalg::spectral_norm(m);
}

double log_norm_squared(const Mat& m) {
  const double l = std::log(operator_norm(m));
  return l * l;
}

Vec wrap(Vec y) {
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    y[i] -= std::floor(y[i]);
    if (y[i] >= 1.0) y[i] = 0.0;
  }
  return y;
}

std::size_t node_count(std::size_t n, std::size_t g) {
  std::size_t count = 1;
  for (std::size_t d = 0; d < n; ++d) {
    if (count > (std::size_t{1} << 28) / g) throw ResourceError("torus grid too large");
    count *= g;
  }
  return count;
}

std::vector<long long> node_digits(std::size_t index, std::size_t n, std::size_t g) {
  std::vector<long long> c(n);
  for (std::size_t d = 0; d < n; ++d) {
    c[d] = static_cast<long long>(index % g);
    index /= g;
  }
  return c;
}

std::size_t node_index(const std::vector<long long>& c, std::size_t g) {
  std::size_t index = 0;
  for (std::size_t d = c.size(); d-- > 0;) {
    const long long gg = static_cast<long long>(g);
    index = index * g + static_cast<std::size_t>(((c[d] % gg) + gg) % gg);
  }
  return index;
}

}  // namespace

TorusDiffeo TorusDiffeo::identity(std::size_t n) { return linear(IntMat::Identity(n, n)); }

TorusDiffeo TorusDiffeo::linear(IntMat a) {
  if (a.rows() != a.cols() || a.rows() == 0) throw UsageError("toral automorphism needs a square integer matrix");
  if (std::llabs(integer_det(a)) != 1) throw DomainError("toral automorphism needs |det A| = 1");
  TorusDiffeo phi;
  phi.kind_ = DiffeoKind::Linear;
  phi.n_ = static_cast<std::size_t>(a.rows());
  phi.matrix_ = std::move(a);
  return phi;
}

TorusDiffeo TorusDiffeo::shear(std::size_t n, std::size_t target, std::size_t source, double amplitude,
                               int frequency, double phase) {
  if (target >= n || source >= n || target == source) throw UsageError("shear needs distinct axes within the torus");
  if (frequency == 0 && amplitude != 0.0) throw UsageError("shear with zero frequency is a translation");
  TorusDiffeo phi;
  phi.kind_ = DiffeoKind::Shear;
  phi.n_ = n;
  phi.target_ = target;
  phi.source_ = source;
  phi.amplitude_ = amplitude;
  phi.frequency_ = frequency;
  phi.phase_ = phase;
  return phi;
}

TorusDiffeo TorusDiffeo::composite(std::vector<TorusDiffeo> parts) {
  if (parts.empty()) throw UsageError("composite needs at least one part");
  for (const auto& p : parts) {
    if (p.dim() != parts.front().dim()) throw UsageError("composite parts act on tori of different dimension");
  }
  TorusDiffeo phi;
  phi.kind_ = DiffeoKind::Composite;
  phi.n_ = parts.front().dim();
  phi.parts_ = std::make_shared<const std::vector<TorusDiffeo>>(std::move(parts));
  return phi;
}

Vec TorusDiffeo::apply(const Vec& x) const {
  if (static_cast<std::size_t>(x.size()) != n_) throw UsageError("point has wrong dimension for the torus");
  switch (kind_) {
    case DiffeoKind::Linear:
      return wrap(matrix_.cast<double>() * x);
    case DiffeoKind::Shear: {
      Vec y = x;
      const auto t = static_cast<Eigen::Index>(target_);
      const auto s = static_cast<Eigen::Index>(source_);
      y[t] += amplitude_ * std::sin(2.0 * std::numbers::pi * frequency_ * x[s] + phase_);
      return wrap(std::move(y));
    }
    case DiffeoKind::Composite: {
      Vec y = x;
      for (auto it = parts().rbegin(); it != parts().rend(); ++it) y = it->apply(y);
      return y;
    }
  }
  return x;
}

Mat TorusDiffeo::jacobian(const Vec& x) const {
  if (static_cast<std::size_t>(x.size()) != n_) throw UsageError("point has wrong dimension for the torus");
  const auto n = static_cast<Eigen::Index>(n_);
  switch (kind_) {
    case DiffeoKind::Linear:
      return matrix_.cast<double>();
    case DiffeoKind::Shear: {
      Mat j = Mat::Identity(n, n);
      const double w = 2.0 * std::numbers::pi * frequency_;
      j(static_cast<Eigen::Index>(target_), static_cast<Eigen::Index>(source_)) =
          amplitude_ * w * std::cos(w * x[static_cast<Eigen::Index>(source_)] + phase_);
      return j;
    }
    case DiffeoKind::Composite: {
      Mat j = Mat::Identity(n, n);
      Vec y = x;
      for (auto it = parts().rbegin(); it != parts().rend(); ++it) {
        j = it->jacobian(y) * j;
        y = it->apply(y);
      }
      return j;
    }
  }
  return Mat::Identity(n, n);
}

TorusDiffeo TorusDiffeo::inverse() const {
  switch (kind_) {
    case DiffeoKind::Linear:
      return linear(integer_inverse(matrix_));
    case DiffeoKind::Shear:
      return shear(n_, target_, source_, -amplitude_, frequency_, phase_);
    case DiffeoKind::Composite: {
      std::vector<TorusDiffeo> inv;
      for (auto it = parts().rbegin(); it != parts().rend(); ++it) inv.push_back(it->inverse());
      return composite(std::move(inv));
    }
  }
  return *this;
}

TorusDiffeo TorusDiffeo::power(int k) const {
  if (k < 0) return inverse().power(-k);
  if (k == 0) return identity(n_);
  if (kind_ == DiffeoKind::Linear) {
    IntMat m = IntMat::Identity(matrix_.rows(), matrix_.cols());
    for (int i = 0; i < k; ++i) m = m * matrix_;
    return linear(std::move(m));
  }
  if (k == 1) return *this;
  return composite(std::vector<TorusDiffeo>(static_cast<std::size_t>(k), *this));
}

bool TorusDiffeo::preserves_lattice() const { return linear_part(*this).has_value(); }

std::string TorusDiffeo::describe() const {
  std::ostringstream out;
  switch (kind_) {
    case DiffeoKind::Linear:
      out << "linear[";
      for (Eigen::Index i = 0; i < matrix_.rows(); ++i) {
        out << (i ? ";" : "");
        for (Eigen::Index j = 0; j < matrix_.cols(); ++j) out << (j ? "," : "") << matrix_(i, j);
      }
      out << ']';
      break;
    case DiffeoKind::Shear:
      out << "shear(x" << target_ << " += " << amplitude_ << " sin(2pi*" << frequency_ << "*x" << source_ << " + "
          << phase_ << "))";
      break;
    case DiffeoKind::Composite:
      out << "compose(";
      for (std::size_t i = 0; i < parts().size(); ++i) out << (i ? ", " : "") << parts()[i].describe();
      out << ')';
      break;
  }
  return out.str();
}

TorusDiffeo compose(const TorusDiffeo& phi, const TorusDiffeo& psi) {
  if (phi.dim() != psi.dim()) throw UsageError("cannot compose diffeomorphisms of tori of different dimension");
  if (phi.kind() == DiffeoKind::Linear && psi.kind() == DiffeoKind::Linear) {
    return TorusDiffeo::linear(phi.matrix() * psi.matrix());
  }
  return TorusDiffeo::composite({phi, psi});
}

std::vector<Vec> midpoint_grid(std::size_t n, std::size_t g) {
  const std::size_t count = node_count(n, g);
  std::vector<Vec> nodes(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto c = node_digits(i, n, g);
    Vec x(static_cast<Eigen::Index>(n));
    for (std::size_t d = 0; d < n; ++d) x[static_cast<Eigen::Index>(d)] = (static_cast<double>(c[d]) + 0.5) / static_cast<double>(g);
    nodes[i] = std::move(x);
  }
  return nodes;
}

double JacobianField::max_det_defect() const {
  double worst = 0.0;
  for (const Mat& m : values) worst = std::max(worst, std::abs(std::abs(m.determinant()) - 1.0));
  return worst;
}

JacobianField jacobian_field(const TorusDiffeo& phi, std::size_t g) {
  JacobianField field;
  field.resolution = g;
  field.nodes = midpoint_grid(phi.dim(), g);
  field.values = parallel::map<Mat>(field.nodes.size(), [&](std::size_t i) { return phi.jacobian(field.nodes[i]); });
  return field;
}

JacobianField jacobian_field_serial(const TorusDiffeo& phi, std::size_t g) {
  JacobianField field;
  field.resolution = g;
  field.nodes = midpoint_grid(phi.dim(), g);
  field.values = parallel::map_serial<Mat>(field.nodes.size(), [&](std::size_t i) { return phi.jacobian(field.nodes[i]); });
  return field;
}

std::size_t default_resolution(std::size_t n) {
  if (n <= 2) return 64;
  if (n == 3) return 16;
  return 8;
}

namespace {

void require_resolution(std::size_t g) {
  if (g < 8) throw UsageError("quadrature resolution must be at least 8 per axis");
}

template <bool Parallel>
double lambda_plus_at(const TorusDiffeo& phi, std::size_t g) {
  require_resolution(g);
  if (const auto a = linear_part(phi)) return std::sqrt(log_norm_squared(a->cast<double>()));
  const std::size_t count = node_count(phi.dim(), g);
  auto term = [&](std::size_t i) {
    const auto c = node_digits(i, phi.dim(), g);
    Vec x(static_cast<Eigen::Index>(phi.dim()));
    for (std::size_t d = 0; d < c.size(); ++d) x[static_cast<Eigen::Index>(d)] = (static_cast<double>(c[d]) + 0.5) / static_cast<double>(g);
    return log_norm_squared(phi.jacobian(x));
  };
  const std::vector<double> terms = Parallel ? parallel::map<double>(count, term) : parallel::map_serial<double>(count, term);
  return std::sqrt(parallel::pairwise_sum(terms) / static_cast<double>(count));
}

}  // namespace

LambdaEstimate lambda_plus(const TorusDiffeo& phi, std::size_t g, bool estimate_error) {
  LambdaEstimate out;
  out.resolution = g;
  out.value = lambda_plus_at<true>(phi, g);
  if (estimate_error && !linear_part(phi)) out.error_estimate = std::abs(out.value - lambda_plus_at<true>(phi, 2 * g));
  return out;
}

double lambda_plus_serial(const TorusDiffeo& phi, std::size_t g) { return lambda_plus_at<false>(phi, g); }

double lambda_plus_weighted(std::span<const Mat> jacobians, std::span<const double> weights) {
  if (jacobians.size() != weights.size()) throw UsageError("one weight per Jacobian required");
  std::vector<double> terms(jacobians.size());
  for (std::size_t i = 0; i < terms.size(); ++i) terms[i] = weights[i] * log_norm_squared(jacobians[i]);
  return std::sqrt(parallel::pairwise_sum(terms));
}

double lambda(const TorusDiffeo& phi, std::size_t g) {
  return std::max(lambda_plus_at<true>(phi, g), lambda_plus_at<true>(phi.inverse(), g));
}

InverseBoundReport inverse_bound_check(const TorusDiffeo& phi, std::size_t g, const Tolerances& tol) {
  InverseBoundReport r;
  r.lambda_plus = lambda_plus_at<true>(phi, g);
  r.lambda_plus_inverse = lambda_plus_at<true>(phi.inverse(), g);
  r.bound = std::sqrt(static_cast<double>(phi.dim()) - 1.0) * r.lambda_plus;
  r.pass = r.lambda_plus_inverse <= r.bound + tol.quadrature_slack;
  return r;
}

DiscretenessProfile geometric_discreteness_profile(const TorusDiffeo& generator, std::size_t k_max,
                                                   std::size_t g) {
  if (k_max < 2 || k_max > 20) throw UsageError("discreteness profile needs 2 <= k_max <= 20");
  DiscretenessProfile p;
  for (std::size_t k = 1; k <= k_max; ++k) p.lambdas.push_back(lambda(generator.power(static_cast<int>(k)), g));

  const double count = static_cast<double>(k_max);
  double mean_k = 0.0;
  double mean_l = 0.0;
  for (std::size_t i = 0; i < k_max; ++i) {
    mean_k += static_cast<double>(i + 1) / count;
    mean_l += p.lambdas[i] / count;
  }
  double skk = 0.0;
  double skl = 0.0;
  double sll = 0.0;
  for (std::size_t i = 0; i < k_max; ++i) {
    const double dk = static_cast<double>(i + 1) - mean_k;
    const double dl = p.lambdas[i] - mean_l;
    skk += dk * dk;
    skl += dk * dl;
    sll += dl * dl;
  }
  p.slope = skl / skk;
  p.intercept = mean_l - p.slope * mean_k;
  p.r_squared = sll > 0.0 ? (skl * skl) / (skk * sll) : 0.0;
  // Slopes below 1e-9 are rounding noise in the norms of isometric maps.
  p.discrete = p.slope > 1e-9 && p.r_squared > 0.99;
  return p;
}

FiniteMeasureSpace lattice_space(std::size_t n, std::size_t g) {
  return FiniteMeasureSpace::uniform(node_count(n, g), 1.0);
}

namespace {

struct Pushed {
  SimpleFunction eta;
  bool exact = true;
  double max_offset = 0.0;
};

Pushed push(const TorusDiffeo& phi, const SimpleFunction& xi, std::size_t g) {
  const std::size_t n = phi.dim();
  const std::size_t count = xi.space().size();
  const auto linear = linear_part(phi);
  const std::optional<IntMat> inv = linear ? std::optional<IntMat>(integer_inverse(*linear)) : std::nullopt;
  const TorusDiffeo phi_inv = linear ? phi : phi.inverse();

  struct Node {
    Point value;
    double offset = 0.0;
  };
  const auto nodes = parallel::map<Node>(count, [&](std::size_t i) {
    const auto c = node_digits(i, n, g);
    Node out;
    if (inv) {
      std::vector<long long> pre(n, 0);
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t s = 0; s < n; ++s) pre[r] += (*inv)(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(s)) * c[s];
      }
      const Mat d = linear->cast<double>();
      const Mat& v = xi.value(node_index(pre, g)).mat();
      out.value = Point::matrix(linalg::symmetrize(d * v * d.transpose()));
      return out;
    }
    Vec x(static_cast<Eigen::Index>(n));
    for (std::size_t d = 0; d < n; ++d) x[static_cast<Eigen::Index>(d)] = static_cast<double>(c[d]) / static_cast<double>(g);
    const Vec y = phi_inv.apply(x);
    std::vector<long long> snapped(n);
    double offset2 = 0.0;
    for (std::size_t d = 0; d < n; ++d) {
      const double scaled = y[static_cast<Eigen::Index>(d)] * static_cast<double>(g);
      snapped[d] = std::llround(scaled);
      const double off = (scaled - static_cast<double>(snapped[d])) / static_cast<double>(g);
      offset2 += off * off;
    }
    const Mat d = phi.jacobian(y);
    const Mat& v = xi.value(node_index(snapped, g)).mat();
    out.value = Point::matrix(linalg::symmetrize(d * v * d.transpose()));
    out.offset = std::sqrt(offset2);
    return out;
  });

  Pushed result{xi, true, 0.0};
  std::vector<Point> values;
  values.reserve(count);
  for (const auto& node : nodes) {
    values.push_back(node.value);
    result.max_offset = std::max(result.max_offset, node.offset);
  }
  result.exact = result.max_offset <= 1e-12;
  result.eta = SimpleFunction(xi.space(), xi.model(), std::move(values));
  return result;
}

}  // namespace

PushforwardResult pushforward_action(const TorusDiffeo& phi, const SimpleFunction& xi, std::size_t g) {
  const std::size_t n = phi.dim();
  if (xi.model().kind() != ModelKind::Spd || xi.model().size() != n) {
    throw UsageError("pushforward needs values in SPD(" + std::to_string(n) + ")");
  }
  if (!(xi.space() == lattice_space(n, g))) {
    throw UsageError("simple function is not defined on the " + std::to_string(g) + "-lattice of the torus");
  }
  Pushed pushed = push(phi, xi, g);
  const SimpleFunction reference = SimpleFunction::constant(xi.space(), xi.model(), origin(xi.model()));
  const Pushed pushed_ref = push(phi, reference, g);
  PushforwardResult out{pushed.eta, pushed.exact, pushed.max_offset, 0.0, {}};
  out.isometry_defect = std::abs(l2_distance(pushed.eta, pushed_ref.eta) - l2_distance(xi, reference));
  if (!out.exact) {
    std::ostringstream msg;
    msg << "preimages miss the lattice by up to " << out.max_offset
        << "; values resampled at the nearest node, measured isometry defect " << out.isometry_defect;
    out.warning = msg.str();
  }
  return out;
}

}  // namespace hadamard
