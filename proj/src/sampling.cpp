#include "slx/sampling.hpp"

#include <algorithm>

namespace slx {

Matrix random_unitary(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) g(r, c) = Complex(gauss(rng), gauss(rng));
  const Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  // Fix the phase so Q is a deterministic function of g.
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

Matrix random_hermitian(int dim, std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  Matrix g(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) g(r, c) = Complex(uni(rng), uni(rng));
  return 0.5 * scale * (g + g.adjoint());
}

SpectralMeasure random_psd_measure(int dim, std::mt19937_64& rng, double lo,
                                   double hi) {
  std::uniform_real_distribution<double> uni(lo, hi);
  std::vector<double> ev(static_cast<size_t>(dim));
  for (auto& e : ev) e = uni(rng);
  std::sort(ev.begin(), ev.end());
  RealVector evv = Eigen::Map<RealVector>(ev.data(), dim);
  return SpectralMeasure(std::move(evv), random_unitary(dim, rng));
}

}  // namespace slx
