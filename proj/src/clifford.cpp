#include "hadamard/clifford.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <limits>
#include <mutex>

#include "hadamard/errors.hpp"
#include "hadamard/parallel.hpp"

namespace hadamard {

namespace {

CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CMat pauli(char which) {
  CMat p = CMat::Zero(2, 2);
  const Complex i(0.0, 1.0);
  switch (which) {
    case 'x':
      p(0, 1) = 1.0;
      p(1, 0) = 1.0;
      break;
    case 'y':
      p(0, 1) = -i;
      p(1, 0) = i;
      break;
    case 'z':
      p(0, 0) = 1.0;
      p(1, 1) = -1.0;
      break;
    default:
      p = CMat::Identity(2, 2);
  }
  return p;
}

// Z^{(x)(j)} (x) P (x) I^{(x)(k-j-1)}.
CMat jordan_wigner(std::size_t k, std::size_t j, char which) {
  CMat out = CMat::Identity(1, 1);
  for (std::size_t q = 0; q < k; ++q) {
    out = kron(out, q < j ? pauli('z') : q == j ? pauli(which) : pauli('i'));
  }
  return out;
}

CliffordElement check_same(const CliffordElement& a, const CliffordElement& b) {
  if (a.algebra != b.algebra) throw UsageError("Clifford elements belong to different algebras");
  return a;
}

}  // namespace

std::shared_ptr<const CliffordAlgebra> CliffordAlgebra::build(std::size_t m) {
  if (m > max_generators) {
    throw ResourceError("Clifford algebra on " + std::to_string(m) + " generators exceeds the limit of " +
                        std::to_string(max_generators));
  }
  static std::mutex mutex;
  static std::array<std::shared_ptr<const CliffordAlgebra>, max_generators + 1> cache;
  std::lock_guard<std::mutex> lock(mutex);
  if (cache[m]) return cache[m];

  const std::size_t k = m / 2;
  std::vector<CMat> even;
  for (std::size_t j = 0; j < k; ++j) {
    even.push_back(jordan_wigner(k, j, 'x'));
    even.push_back(jordan_wigner(k, j, 'y'));
  }
  CMat chi = CMat::Identity(1, 1);
  for (std::size_t q = 0; q < k; ++q) chi = kron(chi, pauli('z'));

  std::vector<CMat> gammas;
  CMat grading;
  if (m % 2 == 0) {
    gammas = std::move(even);
    grading = chi;
  } else {
    const auto h = chi.rows();
    for (const CMat& g : even) {
      CMat d = CMat::Zero(2 * h, 2 * h);
      d.topLeftCorner(h, h) = g;
      d.bottomRightCorner(h, h) = g;
      gammas.push_back(std::move(d));
    }
    CMat last = CMat::Zero(2 * h, 2 * h);
    last.topLeftCorner(h, h) = chi;
    last.bottomRightCorner(h, h) = -chi;
    gammas.push_back(std::move(last));
    grading = CMat::Zero(2 * h, 2 * h);
    grading.topRightCorner(h, h) = chi;
    grading.bottomLeftCorner(h, h) = chi;
  }
  cache[m] = std::shared_ptr<const CliffordAlgebra>(new CliffordAlgebra(std::move(gammas), std::move(grading)));
  return cache[m];
}

double CliffordAlgebra::relation_defect() const {
  const auto d = static_cast<Eigen::Index>(rep_dim());
  const CMat id = CMat::Identity(d, d);
  double worst = 0.0;
  for (std::size_t i = 0; i < m(); ++i) {
    for (std::size_t j = i; j < m(); ++j) {
      CMat r = gammas_[i] * gammas_[j] + gammas_[j] * gammas_[i];
      if (i == j) r -= 2.0 * id;
      worst = std::max(worst, r.cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

double CliffordElement::norm() const { return linalg::spectral_norm(matrix); }

bool CliffordElement::is_even(double tol) const {
  const CMat& e = algebra->grading();
  return (e * matrix * e - matrix).cwiseAbs().maxCoeff() <= tol * (1.0 + norm());
}

bool CliffordElement::is_odd(double tol) const {
  const CMat& e = algebra->grading();
  return (e * matrix * e + matrix).cwiseAbs().maxCoeff() <= tol * (1.0 + norm());
}

CliffordElement operator+(const CliffordElement& a, const CliffordElement& b) {
  check_same(a, b);
  return {a.algebra, a.matrix + b.matrix};
}

CliffordElement operator-(const CliffordElement& a, const CliffordElement& b) {
  check_same(a, b);
  return {a.algebra, a.matrix - b.matrix};
}

CliffordElement operator*(const CliffordElement& a, const CliffordElement& b) {
  check_same(a, b);
  return {a.algebra, a.matrix * b.matrix};
}

CliffordElement operator*(Complex c, const CliffordElement& a) { return {a.algebra, c * a.matrix}; }

CliffordElement identity_element(const AlgebraPtr& alg) {
  const auto d = static_cast<Eigen::Index>(alg->rep_dim());
  return {alg, CMat::Identity(d, d)};
}

CliffordElement vector_element(const AlgebraPtr& alg, const Vec& v) {
  if (static_cast<std::size_t>(v.size()) != alg->m()) {
    throw UsageError("vector of length " + std::to_string(v.size()) + " for a Clifford algebra on " +
                     std::to_string(alg->m()) + " generators");
  }
  const auto d = static_cast<Eigen::Index>(alg->rep_dim());
  CMat out = CMat::Zero(d, d);
  for (std::size_t i = 0; i < alg->m(); ++i) {
    if (v[static_cast<Eigen::Index>(i)] != 0.0) out += v[static_cast<Eigen::Index>(i)] * alg->gamma(i);
  }
  return {alg, std::move(out)};
}

CliffordElement ScalarVector::to_element(const AlgebraPtr& alg) const {
  CliffordElement e = vector_element(alg, vector);
  e.matrix.diagonal().array() += scalar;
  return e;
}

ScalarVector operator-(const ScalarVector& a, const ScalarVector& b) {
  if (a.vector.size() != b.vector.size()) throw UsageError("scalar-vector elements of different length");
  return {a.scalar - b.scalar, a.vector - b.vector};
}

ScalarVector functional_calculus_sv(const TestFunction& f, const Vec& v) {
  const double s = v.norm();
  if (s == 0.0) return {f(0.0), Vec::Zero(v.size())};
  return {f.even(s), (f.odd(s) / s) * v};
}

CliffordElement functional_calculus(const TestFunction& f, const Vec& v, const AlgebraPtr& alg) {
  return functional_calculus_sv(f, v).to_element(alg);
}

CliffordElement spectral_calculus(const TestFunction& f, const CliffordElement& a) {
  const CMat herm = 0.5 * (a.matrix + a.matrix.adjoint());
  return {a.algebra, linalg::hermitian_function(herm, [&f](double x) { return f(x); })};
}

CliffordElement clifford_transform(const Mat& o, const CliffordElement& a) {
  const AlgebraPtr& alg = a.algebra;
  const std::size_t m = alg->m();
  if (static_cast<std::size_t>(o.rows()) != m || static_cast<std::size_t>(o.cols()) != m) {
    throw UsageError("orthogonal transform has the wrong size for this algebra");
  }
  if (m > 10) throw ResourceError("monomial expansion limited to 10 generators");
  const auto d = static_cast<Eigen::Index>(alg->rep_dim());
  std::vector<CMat> images(m);
  for (std::size_t i = 0; i < m; ++i) images[i] = vector_element(alg, o.col(static_cast<Eigen::Index>(i))).matrix;

  CMat out = CMat::Zero(d, d);
  const std::size_t count = std::size_t{1} << m;
  for (std::size_t mask = 0; mask < count; ++mask) {
    CMat mono = CMat::Identity(d, d);
    CMat image = CMat::Identity(d, d);
    for (std::size_t i = 0; i < m; ++i) {
      if (mask & (std::size_t{1} << i)) {
        mono = mono * alg->gamma(i);
        image = image * images[i];
      }
    }
    const Complex c = (mono.adjoint() * a.matrix).trace() / static_cast<double>(d);
    if (std::abs(c) > 0.0) out += c * image;
  }
  return {alg, std::move(out)};
}

Vec clifford_vector(const SpaceModel& model, const Point& x0, const FiberPoint& p) {
  if (!(p.t >= 0.0)) throw UsageError("fiber coordinate t must be nonnegative");
  const TangentVector v = log_map(model, p.x, x0);
  Vec out(v.coords.size() + 1);
  out.head(v.coords.size()) = -v.coords;
  out[v.coords.size()] = p.t;
  return out;
}

AlgebraPtr fiber_algebra(const SpaceModel& model) { return CliffordAlgebra::build(model.dim() + 1); }

CliffordElement clifford_operator(const SpaceModel& model, const Point& x0, const FiberPoint& p) {
  return vector_element(fiber_algebra(model), clifford_vector(model, x0, p));
}

ScalarVector bott_eval_sv(const TestFunction& f, const SpaceModel& model, const Point& x0,
                          const FiberPoint& p) {
  return functional_calculus_sv(f, clifford_vector(model, x0, p));
}

CliffordElement bott_eval(const TestFunction& f, const SpaceModel& model, const Point& x0,
                          const FiberPoint& p) {
  return bott_eval_sv(f, model, x0, p).to_element(fiber_algebra(model));
}

BoundReport base_point_bound_check(const TestFunction& f, const SpaceModel& model, const Point& x0,
                                   const Point& x1, std::span<const FiberPoint> samples,
                                   const Tolerances& tol) {
  if (samples.empty()) throw UsageError("base-point bound check needs at least one fiber sample");
  const double r = distance(model, x0, x1);
  const double bound = base_point_bound(f, r);
  BoundReport report;
  report.rows = parallel::map<BoundRow>(samples.size(), [&](std::size_t i) {
    BoundRow row;
    row.id = i;
    row.measured = (bott_eval_sv(f, model, x0, samples[i]) - bott_eval_sv(f, model, x1, samples[i])).norm();
    row.bound = bound;
    if (bound > 0.0) {
      row.ratio = row.measured / bound;
    } else {
      row.ratio = row.measured > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    }
    row.pass = row.measured <= bound + tol.bott_bound;
    return row;
  });
  report.max_excess = -std::numeric_limits<double>::infinity();
  for (const BoundRow& row : report.rows) {
    report.max_measured = std::max(report.max_measured, row.measured);
    report.max_ratio = std::max(report.max_ratio, row.ratio);
    report.max_excess = std::max(report.max_excess, row.measured - row.bound);
    if (!row.pass) ++report.violations;
  }
  return report;
}

}  // namespace hadamard
