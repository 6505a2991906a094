#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include "slx/errors.hpp"

namespace slx {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Square root with the cut along [0, inf) and image in the closed upper
// half-plane. Realized as i * principal_sqrt(-w); the limit on the cut is
// taken from above, so branch_sqrt(t) = +sqrt(t) for t >= 0 and i*sqrt(-t)
// for t < 0. This is the branch for which i*branch_sqrt(z - T) evaluates the
// half-line Weyl function: it gives M(0) = -sqrt(T) and boundary values
// i*sqrt(t - T) on the essential spectrum.
Complex branch_sqrt(Complex w);

// Finite Hermitian model of the potential: T = U diag(t_j) U* with
// 0 <= t_0 <= ... <= t_{dim-1}. essential_edge is user-declared metadata for
// reporting (the bottom of the modeled essential spectrum); it does not
// affect any computation on the finite model itself.
class SpectralMeasure {
 public:
  SpectralMeasure(RealVector eigenvalues, Matrix eigenvectors,
                  std::optional<double> essential_edge = std::nullopt);

  // Diagonal convenience: U = I.
  static SpectralMeasure from_eigenvalues(
      const std::vector<double>& eigenvalues,
      std::optional<double> essential_edge = std::nullopt);

  int dim() const { return static_cast<int>(m_eigenvalues.size()); }
  const RealVector& eigenvalues() const { return m_eigenvalues; }
  const Matrix& eigenvectors() const { return m_eigenvectors; }
  std::optional<double> essential_edge() const { return m_essential_edge; }

  // Reconstructed matrix U diag(t) U*.
  Matrix matrix() const;

 private:
  RealVector m_eigenvalues;   // ascending, all >= 0
  Matrix m_eigenvectors;      // unitary, columns are eigenvectors
  std::optional<double> m_essential_edge;
};

// Diagonalize a Hermitian PSD matrix. Entries of H - H* above 1e-10 in
// magnitude -> NotHermitian; eigenvalues below -1e-10 -> NegativeSpectrum;
// eigenvalues in [-1e-10, 0) are clamped to 0.
SpectralMeasure spectral_measure_from_matrix(
    const Matrix& h, std::optional<double> essential_edge = std::nullopt);

// Standard 3-point Dirichlet finite-difference model of -d^2/dx^2 + q(x) on
// (0, interval_length): tridiagonal (-1, 2, -1)/h^2 + diag(q) over the
// len(q_samples) interior nodes, h = interval_length / (len + 1).
SpectralMeasure spectral_measure_from_schrodinger_1d(
    const std::vector<double>& q_samples, double interval_length);

// Functional calculus U diag(f(t_j)) U*. f must be finite at every
// eigenvalue (FunctionUndefinedAtEigenvalue otherwise).
Matrix apply_function(const SpectralMeasure& m,
                      const std::function<Complex(double)>& f);

// dim ran E_T([0, t)) = #{ j : t_j < t }.
int counting_function(const SpectralMeasure& m, double t);

struct SpectrumEdges {
  double t0;  // min eigenvalue of the finite model
  double t1;  // declared essential edge, +inf when absent
};

SpectrumEdges spectrum_edges(const SpectralMeasure& m);

}  // namespace slx
