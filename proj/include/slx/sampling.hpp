#pragma once

#include <random>

#include "slx/spectral.hpp"

namespace slx {

// Deterministic random model builders shared by the verification suite, the
// property tests, and the CLI. All draws go through the caller's engine so a
// fixed seed reproduces every model byte for byte.

Matrix random_unitary(int dim, std::mt19937_64& rng);

Matrix random_hermitian(int dim, std::mt19937_64& rng, double scale = 1.0);

// Random PSD potential: eigenvalues uniform in [lo, hi] (lo >= 0), random
// eigenbasis.
SpectralMeasure random_psd_measure(int dim, std::mt19937_64& rng,
                                   double lo = 0.0, double hi = 6.0);

}  // namespace slx
