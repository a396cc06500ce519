#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>

namespace hadamard {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;
using Complex = std::complex<double>;

namespace linalg {

struct SymmetricEigen {
  Vec values;   // ascending
  Mat vectors;  // columns are orthonormal eigenvectors
};

// Eigendecomposition of the symmetric part of `a`.
SymmetricEigen eigh(const Mat& a);

// V diag(fn(values)) V^T for a symmetric matrix.
Mat apply_spectral(const SymmetricEigen& eig, const std::function<double(double)>& fn);

Mat symmetrize(const Mat& a);

// Matrix functions of symmetric (positive definite) matrices. `sym_log`
// clamps eigenvalues from below at `clamp` before taking the logarithm.
Mat sym_log(const Mat& a, double clamp = 1e-300);
Mat sym_exp(const Mat& s);
Mat sym_sqrt(const Mat& a);
Mat sym_inv_sqrt(const Mat& a);
Mat sym_pow(const Mat& a, double t);

// Throws DomainError unless min eigenvalue > rel_tol * max |eigenvalue|.
void require_spd(const Mat& a, double rel_tol);
bool is_spd(const Mat& a, double rel_tol);

double spectral_norm(const Mat& a);
double spectral_norm(const CMat& a);
double hs_norm(const Mat& a);

// Largest eigenvalue-modulus of a Hermitian matrix; equals its spectral norm.
double hermitian_norm(const CMat& a);

// Matrix function of a Hermitian matrix via its eigendecomposition.
CMat hermitian_function(const CMat& a, const std::function<double(double)>& fn);

}  // namespace linalg
}  // namespace hadamard
