#pragma once

#include <vector>

#include "slx/extension.hpp"
#include "slx/spectral.hpp"

namespace slx {

// Uniform grid 0, h, 2h, ..., n*h on [0, L = n*h].
struct Grid {
  double h = 0.0;
  int n = 0;  // number of cells; n+1 nodes

  double length() const { return h * n; }
  double node(int k) const { return h * k; }

  static Grid with_length(double h, double length);
};

// Vector-valued function sampled on a uniform grid: values(k, j) is
// component j at node k. Integrals against these samples treat the function
// as piecewise linear between nodes and zero beyond the last node.
class GridFunction {
 public:
  GridFunction(Grid grid, Matrix values);

  const Grid& grid() const { return m_grid; }
  const Matrix& values() const { return m_values; }
  Matrix& values() { return m_values; }
  int dim() const { return static_cast<int>(m_values.cols()); }

  // Trapezoid quadrature of <f(x), g(x)> over [0, L].
  Complex inner(const GridFunction& other) const;
  double norm() const;

 private:
  Grid m_grid;
  Matrix m_values;
};

// Truncation heuristic for decaying defect elements: L = 30 / sqrt(min_j
// Im sqrt(z - t_j)), clamped to [10, 200], with h = 1/200.
Grid default_grid(const SpectralMeasure& m, Complex z);

// Boundary parameter of the named canonical realization in the requested
// triplet coordinates: Dirichlet relation; Neumann B = 0; Krein B = -sqrt(T)
// (base coordinates; regularized coordinates apply the canonical transform).
ExtensionParameter canonical_parameter(const SpectralMeasure& m,
                                       RealizationKind kind,
                                       TripletTag triplet = TripletTag::Base);

// Defect element x -> exp(i x sqrt(z - T)) h sampled on the grid.
GridFunction gamma_apply(const SpectralMeasure& m, Complex z, const Vector& h,
                         const Grid& grid);

// integral_0^L exp(i x sqrt(z - T)) f(x) dx with f piecewise linear: the
// adjoint gamma(conj(z))* applied to f, by per-cell closed-form integration
// (the only discretization error is the interpolation of f).
Vector gamma_adjoint_apply(const SpectralMeasure& m, Complex z,
                           const GridFunction& f);

// (A_D - z)^{-1} f for the Dirichlet realization, channelwise exact Green
// integral against the piecewise-linear interpolant of f. g(0) = 0 exactly.
GridFunction dirichlet_resolvent_apply(const SpectralMeasure& m, Complex z,
                                       const GridFunction& f);

// (A_B - z)^{-1} f via the resolvent difference against Dirichlet:
// g = (A_D - z)^{-1} f + gamma(z) (B - M(z))^{-1} gamma(conj z)* f.
GridFunction krein_resolvent_apply(const SpectralMeasure& m,
                                   const ExtensionParameter& p, Complex z,
                                   const GridFunction& f);

// Basis of the kernel of the Krein realization: x -> exp(-x sqrt(t_j)) v_j
// per eigenpair. Requires all eigenvalues > 0 (ZeroEigenvalue).
std::vector<GridFunction> krein_kernel_basis(const SpectralMeasure& m,
                                             const Grid& grid);

}  // namespace slx
