#include "slx/realizations.hpp"

#include <cmath>

#include "slx/linalg.hpp"
#include "slx/triplets.hpp"
#include "slx/weyl.hpp"

namespace slx {

Grid Grid::with_length(double h, double length) {
  if (!(h > 0.0) || !(length > h))
    fail(ErrorCode::BadGrid, "need 0 < h < length");
  Grid g;
  g.h = h;
  g.n = static_cast<int>(std::llround(length / h));
  if (g.n < 2) fail(ErrorCode::BadGrid, "grid needs at least 2 cells");
  return g;
}

GridFunction::GridFunction(Grid grid, Matrix values)
    : m_grid(grid), m_values(std::move(values)) {
  if (!(m_grid.h > 0.0) || m_grid.n < 1)
    fail(ErrorCode::BadGrid, "invalid grid");
  if (m_values.rows() != m_grid.n + 1 || m_values.cols() < 1)
    fail(ErrorCode::GridMismatch, "values must have one row per node");
  if (!m_values.allFinite())
    fail(ErrorCode::BadGrid, "grid function has non-finite samples");
}

Complex GridFunction::inner(const GridFunction& other) const {
  if (other.m_grid.n != m_grid.n ||
      std::abs(other.m_grid.h - m_grid.h) > 1e-12 * m_grid.h ||
      other.dim() != dim())
    fail(ErrorCode::GridMismatch, "inner product needs matching grids");
  Complex acc = 0.0;  // conjugate-linear in *this
  for (int k = 0; k <= m_grid.n; ++k) {
    const double w = (k == 0 || k == m_grid.n) ? 0.5 : 1.0;
    acc += w * (m_values.row(k).conjugate() * other.m_values.row(k).transpose())
                   .value();
  }
  return acc * m_grid.h;
}

double GridFunction::norm() const { return std::sqrt(inner(*this).real()); }

Grid default_grid(const SpectralMeasure& m, Complex z) {
  double min_im = std::numeric_limits<double>::infinity();
  for (int j = 0; j < m.dim(); ++j)
    min_im = std::min(min_im, branch_sqrt(z - m.eigenvalues()[j]).imag());
  if (!(min_im > 0.0))
    fail(ErrorCode::OnSpectrumWithoutLimit,
         "no decaying defect element at this z");
  const double length = std::clamp(30.0 / std::sqrt(min_im), 10.0, 200.0);
  return Grid::with_length(1.0 / 200.0, length);
}

ExtensionParameter canonical_parameter(const SpectralMeasure& m,
                                       RealizationKind kind,
                                       TripletTag triplet) {
  if (kind == RealizationKind::Dirichlet) {
    ExtensionParameter p = ExtensionParameter::dirichlet();
    p.triplet = triplet;
    return p;
  }
  Matrix b;
  switch (kind) {
    case RealizationKind::Neumann:
      b = Matrix::Zero(m.dim(), m.dim());
      break;
    case RealizationKind::Krein:
      b = apply_function(m,
                         [](double t) { return Complex(-std::sqrt(t), 0.0); });
      break;
    default:
      fail(ErrorCode::ConfigParse,
           "Robin has no canonical parameter; supply B explicitly");
  }
  if (triplet == TripletTag::Regularized) {
    const auto tt = regularize(weyl_base(m, Complex(0.0, 1.0)));
    b = transform_parameter(tt, b);
  }
  return ExtensionParameter::robin(std::move(b), triplet);
}

namespace {

// E0(s) = int_0^1 e^{s u} du, E1(s) = int_0^1 u e^{s u} du, stable near 0.
void cell_weights(Complex s, Complex& e0, Complex& e1) {
  if (std::abs(s) < 0.5) {
    e0 = 0.0;
    e1 = 0.0;
    Complex term(1.0, 0.0);  // s^m / m!
    for (int mth = 0; mth < 24; ++mth) {
      e0 += term / double(mth + 1);
      e1 += term / double(mth + 2);
      term *= s / double(mth + 1);
      if (std::abs(term) < 1e-20) break;
    }
    return;
  }
  const Complex es = std::exp(s);
  e0 = (es - 1.0) / s;
  e1 = (es * (s - 1.0) + 1.0) / (s * s);
}

Complex channel_exponent(const SpectralMeasure& m, Complex z, int j) {
  return branch_sqrt(z - m.eigenvalues()[j]);
}

void require_resolvent_point(const SpectralMeasure& m, Complex z) {
  if (z.imag() == 0.0 && z.real() >= m.eigenvalues()[0])
    fail(ErrorCode::OnSpectrumWithoutLimit,
         "real z meets the essential spectrum of every realization");
}

}  // namespace

GridFunction gamma_apply(const SpectralMeasure& m, Complex z, const Vector& h,
                         const Grid& grid) {
  require_resolvent_point(m, z);
  if (h.size() != m.dim())
    fail(ErrorCode::GridMismatch, "boundary vector dimension mismatch");
  const Matrix& u = m.eigenvectors();
  const Vector h_eig = u.adjoint() * h;
  Matrix vals_eig(grid.n + 1, m.dim());
  for (int j = 0; j < m.dim(); ++j) {
    const Complex iw = Complex(0.0, 1.0) * channel_exponent(m, z, j);
    for (int k = 0; k <= grid.n; ++k)
      vals_eig(k, j) = std::exp(iw * grid.node(k)) * h_eig(j);
  }
  return GridFunction(grid, vals_eig * u.transpose());
}

Vector gamma_adjoint_apply(const SpectralMeasure& m, Complex z,
                           const GridFunction& f) {
  require_resolvent_point(m, z);
  if (f.dim() != m.dim())
    fail(ErrorCode::GridMismatch, "grid function dimension mismatch");
  const Matrix& u = m.eigenvectors();
  const Matrix f_eig = f.values() * u.conjugate();
  const Grid& grid = f.grid();
  Vector out_eig(m.dim());
  for (int j = 0; j < m.dim(); ++j) {
    const Complex w = channel_exponent(m, z, j);
    const Complex s = Complex(0.0, 1.0) * w * grid.h;
    Complex e0, e1;
    cell_weights(s, e0, e1);
    // Accumulate cells left to right; the phase factor decays, so the
    // running multiplier stays bounded by 1.
    Complex acc = 0.0;
    Complex phase(1.0, 0.0);  // e^{i w x_k}
    const Complex step = std::exp(s);
    for (int k = 0; k < grid.n; ++k) {
      const Complex a = f_eig(k, j);
      const Complex b = f_eig(k + 1, j);
      acc += phase * grid.h * (a * e0 + (b - a) * e1);
      phase *= step;
    }
    out_eig(j) = acc;
  }
  return u * out_eig;
}

GridFunction dirichlet_resolvent_apply(const SpectralMeasure& m, Complex z,
                                       const GridFunction& f) {
  require_resolvent_point(m, z);
  if (f.dim() != m.dim())
    fail(ErrorCode::GridMismatch, "grid function dimension mismatch");
  const Matrix& u = m.eigenvectors();
  const Matrix f_eig = f.values() * u.conjugate();
  const Grid& grid = f.grid();
  const int n = grid.n;
  Matrix g_eig(n + 1, m.dim());

  // Half-line Dirichlet Green kernel per channel, w = sqrt(z - t_j):
  //   G(x, y) = (i / 2w) (e^{i w |x - y|} - e^{i w (x + y)}).
  // The three pieces below are accumulated with decaying phases only:
  //   left(k)  = int_0^{x_k} e^{i w (x_k - y)} f(y) dy
  //   right(k) = int_{x_k}^{L} e^{i w (y - x_k)} f(y) dy
  //   image(k) = e^{i w x_k} * right(0)
  for (int j = 0; j < m.dim(); ++j) {
    const Complex w = channel_exponent(m, z, j);
    const Complex s = Complex(0.0, 1.0) * w * grid.h;
    const Complex step = std::exp(s);
    Complex e0, e1;
    cell_weights(s, e0, e1);

    Vector left(n + 1), right(n + 1);
    left(0) = 0.0;
    for (int k = 0; k < n; ++k) {
      const Complex a = f_eig(k, j);
      const Complex b = f_eig(k + 1, j);
      // weight e^{i w (x_{k+1} - y)}: tau measured from the right node
      left(k + 1) = step * left(k) + grid.h * (b * e0 + (a - b) * e1);
    }
    right(n) = 0.0;
    for (int k = n - 1; k >= 0; --k) {
      const Complex a = f_eig(k, j);
      const Complex b = f_eig(k + 1, j);
      right(k) = step * right(k + 1) + grid.h * (a * e0 + (b - a) * e1);
    }
    const Complex total = right(0);  // int_0^L e^{i w y} f(y) dy
    const Complex pref = Complex(0.0, 1.0) / (2.0 * w);
    Complex phase(1.0, 0.0);
    for (int k = 0; k <= n; ++k) {
      g_eig(k, j) = pref * (left(k) + right(k) - phase * total);
      phase *= step;
    }
  }
  return GridFunction(grid, g_eig * u.transpose());
}

GridFunction krein_resolvent_apply(const SpectralMeasure& m,
                                   const ExtensionParameter& p, Complex z,
                                   const GridFunction& f) {
  GridFunction g = dirichlet_resolvent_apply(m, z, f);
  if (p.is_dirichlet) return g;
  if (p.b.rows() != m.dim() || p.b.cols() != m.dim())
    fail(ErrorCode::GridMismatch, "parameter dimension mismatch");

  // Work in base coordinates; a regularized parameter pulls back through the
  // inverse canonical transform, B = R B~ R + Q.
  Matrix b = p.b;
  if (p.triplet == TripletTag::Regularized) {
    const auto tt = regularize(weyl_base(m, Complex(0.0, 1.0)));
    b = transform_parameter(tt.inverse(), p.b);
  }

  const Matrix mz = z.imag() == 0.0
                        ? boundary_value(m, RealizationKind::Dirichlet,
                                         z.real())
                        : weyl_base(m, z);
  const Vector w = gamma_adjoint_apply(m, z, f);
  const Vector c = invert_pencil(b - mz) * w;
  const GridFunction correction = gamma_apply(m, z, c, f.grid());
  g.values() += correction.values();
  return g;
}

std::vector<GridFunction> krein_kernel_basis(const SpectralMeasure& m,
                                             const Grid& grid) {
  for (int j = 0; j < m.dim(); ++j)
    if (!(m.eigenvalues()[j] > 0.0))
      fail(ErrorCode::ZeroEigenvalue,
           "Krein kernel basis needs strictly positive eigenvalues");
  std::vector<GridFunction> basis;
  basis.reserve(static_cast<size_t>(m.dim()));
  for (int j = 0; j < m.dim(); ++j) {
    const double root = std::sqrt(m.eigenvalues()[j]);
    Matrix vals(grid.n + 1, m.dim());
    for (int k = 0; k <= grid.n; ++k)
      vals.row(k) =
          std::exp(-root * grid.node(k)) * m.eigenvectors().col(j).transpose();
    basis.emplace_back(grid, std::move(vals));
  }
  return basis;
}

}  // namespace slx
