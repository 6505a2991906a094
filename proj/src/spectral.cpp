#include "slx/spectral.hpp"

#include <cmath>
#include <limits>

namespace slx {

Complex branch_sqrt(Complex w) {
  // Pin the cut limit explicitly so signed zeros in w.imag() cannot flip the
  // edge: real arguments always take the limit from the upper half-plane.
  if (w.imag() == 0.0) {
    if (w.real() >= 0.0) return Complex(std::sqrt(w.real()), 0.0);
    return Complex(0.0, std::sqrt(-w.real()));
  }
  return Complex(0.0, 1.0) * std::sqrt(-w);
}

SpectralMeasure::SpectralMeasure(RealVector eigenvalues, Matrix eigenvectors,
                                 std::optional<double> essential_edge)
    : m_eigenvalues(std::move(eigenvalues)),
      m_eigenvectors(std::move(eigenvectors)),
      m_essential_edge(essential_edge) {
  const int n = static_cast<int>(m_eigenvalues.size());
  if (n == 0) fail(ErrorCode::EmptyGrid, "spectral measure needs dim >= 1");
  if (m_eigenvectors.rows() != n || m_eigenvectors.cols() != n)
    fail(ErrorCode::GridMismatch, "eigenvector matrix shape mismatch");
  for (int j = 0; j < n; ++j) {
    if (!(m_eigenvalues[j] >= 0.0))
      fail(ErrorCode::NegativeSpectrum, "eigenvalues must be >= 0");
    if (j > 0 && m_eigenvalues[j] < m_eigenvalues[j - 1])
      fail(ErrorCode::BadGrid, "eigenvalues must be ascending");
  }
  const double ortho =
      (m_eigenvectors.adjoint() * m_eigenvectors - Matrix::Identity(n, n))
          .cwiseAbs()
          .maxCoeff();
  if (ortho > 1e-12)
    fail(ErrorCode::SolverFailure, "eigenvector matrix is not unitary");
}

SpectralMeasure SpectralMeasure::from_eigenvalues(
    const std::vector<double>& eigenvalues,
    std::optional<double> essential_edge) {
  RealVector ev = Eigen::Map<const RealVector>(
      eigenvalues.data(), static_cast<Eigen::Index>(eigenvalues.size()));
  std::sort(ev.begin(), ev.end());
  const int n = static_cast<int>(ev.size());
  return SpectralMeasure(std::move(ev), Matrix::Identity(n, n),
                         essential_edge);
}

Matrix SpectralMeasure::matrix() const {
  return m_eigenvectors * m_eigenvalues.cast<Complex>().asDiagonal() *
         m_eigenvectors.adjoint();
}

SpectralMeasure spectral_measure_from_matrix(
    const Matrix& h, std::optional<double> essential_edge) {
  if (h.rows() != h.cols() || h.rows() == 0)
    fail(ErrorCode::NotHermitian, "potential matrix must be square");
  const double asym = (h - h.adjoint()).cwiseAbs().maxCoeff();
  if (asym > 1e-10)
    fail(ErrorCode::NotHermitian,
         "||H - H*||_max = " + std::to_string(asym));
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (h + h.adjoint()));
  if (es.info() != Eigen::Success)
    fail(ErrorCode::SolverFailure, "eigendecomposition failed");
  RealVector ev = es.eigenvalues();
  for (Eigen::Index j = 0; j < ev.size(); ++j) {
    if (ev[j] < -1e-10)
      fail(ErrorCode::NegativeSpectrum,
           "eigenvalue " + std::to_string(ev[j]) + " < -1e-10");
    if (ev[j] < 0.0) ev[j] = 0.0;
  }
  return SpectralMeasure(std::move(ev), es.eigenvectors(), essential_edge);
}

SpectralMeasure spectral_measure_from_schrodinger_1d(
    const std::vector<double>& q_samples, double interval_length) {
  const int n = static_cast<int>(q_samples.size());
  if (n < 3) fail(ErrorCode::TooFewSamples, "need at least 3 samples of q");
  if (!(interval_length > 0.0))
    fail(ErrorCode::BadGrid, "interval length must be positive");
  for (double q : q_samples)
    if (!(q >= 0.0))
      fail(ErrorCode::NegativePotential, "q must be nonnegative");
  const double h = interval_length / (n + 1);
  Eigen::MatrixXd sturm = Eigen::MatrixXd::Zero(n, n);
  const double w = 1.0 / (h * h);
  for (int j = 0; j < n; ++j) {
    sturm(j, j) = 2.0 * w + q_samples[static_cast<size_t>(j)];
    if (j + 1 < n) {
      sturm(j, j + 1) = -w;
      sturm(j + 1, j) = -w;
    }
  }
  return spectral_measure_from_matrix(sturm.cast<Complex>());
}

Matrix apply_function(const SpectralMeasure& m,
                      const std::function<Complex(double)>& f) {
  const int n = m.dim();
  Vector d(n);
  for (int j = 0; j < n; ++j) {
    const Complex v = f(m.eigenvalues()[j]);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      fail(ErrorCode::FunctionUndefinedAtEigenvalue,
           "f not finite at eigenvalue " +
               std::to_string(m.eigenvalues()[j]));
    d[j] = v;
  }
  return m.eigenvectors() * d.asDiagonal() * m.eigenvectors().adjoint();
}

int counting_function(const SpectralMeasure& m, double t) {
  int count = 0;
  for (int j = 0; j < m.dim(); ++j)
    if (m.eigenvalues()[j] < t) ++count;
  return count;
}

SpectrumEdges spectrum_edges(const SpectralMeasure& m) {
  SpectrumEdges e;
  e.t0 = m.eigenvalues()[0];
  e.t1 = m.essential_edge().value_or(
      std::numeric_limits<double>::infinity());
  return e;
}

}  // namespace slx
