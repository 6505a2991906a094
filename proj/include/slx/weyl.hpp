#pragma once

#include "slx/extension.hpp"
#include "slx/spectral.hpp"

namespace slx {

// One evaluation of a (generalized) Weyl function.
struct HerglotzSample {
  Complex z;
  Matrix value;
  RealizationKind kind = RealizationKind::Dirichlet;
  TripletTag triplet = TripletTag::Base;
};

// Maximal-normal-function estimate at a real point: value = sup over the
// y-grid of ||(Im N(i))^{-1/2} (N(t + iy) - Re N(i)) (Im N(i))^{-1/2}|| for
// N(z) = -i M(z) = sqrt(z - T), together with the a-priori bound
// (1 + sqrt(2)) (1 + t^2)^{1/4}, which holds uniformly in T for this
// rotation (and for no other; see the note in the implementation).
struct NormalFunctionEstimate {
  double t = 0.0;
  double value = 0.0;
  double bound = 0.0;
  int y_count = 0;
  double y_min = 0.0;
};

// Weyl function of the base triplet (Gamma_0 f = f(0), Gamma_1 f = f'(0)):
// M(z) = i sqrt(z - T). Defined off [t0, inf) on the real axis; real z on
// the spectrum must go through boundary_value (OnSpectrumWithoutLimit).
Matrix weyl_base(const SpectralMeasure& m, Complex z);

// Closed-form boundary values M_*(t + i0) for the canonical realizations:
// Dirichlet -> i sqrt(t - T); Neumann -> (0 - M(t+i0))^{-1}; Krein ->
// (1/t)(i sqrt(t - T) - sqrt(T)). Neumann has square-root poles at
// eigenvalues (EigenvalueCollision within 1e-9) and Krein a pole at t = 0
// (KreinAtZero).
Matrix boundary_value(const SpectralMeasure& m, RealizationKind kind,
                      double t);

// Generalized Weyl function of the extension with parameter p:
// (B - M(z))^{-1}, with M replaced by its canonical regularization when the
// parameter lives in regularized coordinates. Real z evaluates the boundary
// limit. Errors: DirichletParameter, SingularPencil.
HerglotzSample weyl_of_extension(const SpectralMeasure& m,
                                 const ExtensionParameter& p, Complex z);

// Invariant maximal normal function estimate over the geometric y-grid
// { y_min^(j/(y_count-1)) : j = y_count-1 .. 0 } subset (0, 1].
NormalFunctionEstimate invariant_max_normal(const SpectralMeasure& m,
                                            double t, int y_count = 64,
                                            double y_min = 1e-6);

}  // namespace slx
