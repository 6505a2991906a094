#pragma once

#include "slx/spectral.hpp"

namespace slx {

// Which self-adjoint realization of -d^2/dt^2 + T a value refers to.
enum class RealizationKind { Dirichlet, Neumann, Krein, Robin };

// Coordinates a boundary parameter is expressed in: the base triplet
// (f(0), f'(0)) or its canonical regularization (R f(0), R^{-1}(f'(0) - Q f(0)))
// with Q = Re M(i), R = (Im M(i))^{1/2}.
enum class TripletTag { Base, Regularized };

const char* realization_name(RealizationKind kind);
const char* triplet_name(TripletTag tag);

// Boundary parameter of a proper extension: either the Dirichlet relation
// (no matrix) or the graph of a Hermitian B, f'(0) = B f(0) in the tagged
// triplet's coordinates.
struct ExtensionParameter {
  bool is_dirichlet = false;
  Matrix b;  // ignored when is_dirichlet
  TripletTag triplet = TripletTag::Base;

  static ExtensionParameter dirichlet() {
    ExtensionParameter p;
    p.is_dirichlet = true;
    return p;
  }

  static ExtensionParameter robin(Matrix b_matrix,
                                  TripletTag tag = TripletTag::Base) {
    ExtensionParameter p;
    p.b = std::move(b_matrix);
    p.triplet = tag;
    return p;
  }
};

}  // namespace slx
