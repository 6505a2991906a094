#pragma once

#include <Eigen/Dense>

#include "slx/errors.hpp"
#include "slx/spectral.hpp"

namespace slx {

inline Matrix re_part(const Matrix& a) { return 0.5 * (a + a.adjoint()); }

inline Matrix im_part(const Matrix& a) {
  return (a - a.adjoint()) / Complex(0.0, 2.0);
}

inline double op_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Matrix>(a).singularValues()(0);
}

// Eigendecomposition-based power of a Hermitian PSD matrix. Eigenvalues in
// [-clamp_tol, 0) are treated as 0; below that is an error with the given
// code. Negative exponents require strictly positive spectrum.
inline Matrix psd_power(const Matrix& h, double p,
                        ErrorCode on_degenerate = ErrorCode::SolverFailure,
                        double clamp_tol = 1e-12) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(re_part(h));
  if (es.info() != Eigen::Success)
    fail(ErrorCode::SolverFailure, "hermitian eigensolve failed");
  const double scale = std::max(1.0, std::abs(es.eigenvalues().maxCoeff()));
  Vector d(es.eigenvalues().size());
  for (Eigen::Index j = 0; j < d.size(); ++j) {
    double ev = es.eigenvalues()(j);
    if (ev < 0.0 && ev >= -clamp_tol * scale) ev = 0.0;
    if (ev < 0.0 || (p < 0.0 && ev <= clamp_tol * scale))
      fail(on_degenerate, "matrix not positive (eigenvalue " +
                              std::to_string(es.eigenvalues()(j)) + ")");
    d(j) = Complex(std::pow(ev, p), 0.0);
  }
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

inline Matrix psd_sqrt(const Matrix& h) { return psd_power(h, 0.5); }

// Inverse through SVD with a relative singular-pencil guard.
inline Matrix invert_pencil(const Matrix& a,
                            double rel_tol = 1e-12,
                            ErrorCode on_singular = ErrorCode::SingularPencil) {
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  const double smin = sv(sv.size() - 1);
  if (!(smax > 0.0) || smin < rel_tol * smax)
    fail(on_singular, "pencil numerically singular (smin/smax = " +
                          std::to_string(smax > 0 ? smin / smax : 0.0) + ")");
  Vector inv(sv.size());
  for (Eigen::Index j = 0; j < sv.size(); ++j)
    inv(j) = Complex(1.0 / sv(j), 0.0);
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

}  // namespace slx
