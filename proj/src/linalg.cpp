#include "hadamard/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hadamard/errors.hpp"

namespace hadamard::linalg {

Mat symmetrize(const Mat& a) { return 0.5 * (a + a.transpose()); }

SymmetricEigen eigh(const Mat& a) {
  Eigen::SelfAdjointEigenSolver<Mat> solver(symmetrize(a));
  if (solver.info() != Eigen::Success) {
    throw DomainError("symmetric eigendecomposition failed");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Mat apply_spectral(const SymmetricEigen& eig, const std::function<double(double)>& fn) {
  Vec mapped = eig.values.unaryExpr(fn);
  Mat out = eig.vectors * mapped.asDiagonal() * eig.vectors.transpose();
  return symmetrize(out);
}

Mat sym_log(const Mat& a, double clamp) {
  return apply_spectral(eigh(a), [clamp](double x) { return std::log(std::max(x, clamp)); });
}

Mat sym_exp(const Mat& s) {
  return apply_spectral(eigh(s), [](double x) { return std::exp(x); });
}

Mat sym_sqrt(const Mat& a) {
  return apply_spectral(eigh(a), [](double x) { return std::sqrt(std::max(x, 0.0)); });
}

Mat sym_inv_sqrt(const Mat& a) {
  return apply_spectral(eigh(a), [](double x) { return 1.0 / std::sqrt(x); });
}

Mat sym_pow(const Mat& a, double t) {
  return apply_spectral(eigh(a), [t](double x) { return std::pow(x, t); });
}

bool is_spd(const Mat& a, double rel_tol) {
  if (a.rows() != a.cols() || a.rows() == 0 || !a.allFinite()) return false;
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-9 * (1.0 + a.cwiseAbs().maxCoeff())) {
    return false;
  }
  Vec ev = eigh(a).values;
  double scale = ev.cwiseAbs().maxCoeff();
  return ev.minCoeff() > rel_tol * scale;
}

void require_spd(const Mat& a, double rel_tol) {
  if (!is_spd(a, rel_tol)) {
    std::ostringstream msg;
    msg << "matrix is not symmetric positive definite:\n" << a;
    throw DomainError(msg.str());
  }
}

double spectral_norm(const Mat& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(a);
  return svd.singularValues()(0);
}

double spectral_norm(const CMat& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMat> svd(a);
  return svd.singularValues()(0);
}

double hs_norm(const Mat& a) { return a.norm(); }

double hermitian_norm(const CMat& a) {
  Eigen::SelfAdjointEigenSolver<CMat> solver(0.5 * (a + a.adjoint()));
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

CMat hermitian_function(const CMat& a, const std::function<double(double)>& fn) {
  Eigen::SelfAdjointEigenSolver<CMat> solver(0.5 * (a + a.adjoint()));
  Vec mapped = solver.eigenvalues().unaryExpr(fn);
  const CMat& v = solver.eigenvectors();
  return v * mapped.cast<Complex>().asDiagonal() * v.adjoint();
}

}  // namespace hadamard::linalg
