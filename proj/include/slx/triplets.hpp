#pragma once

#include <vector>

#include "slx/spectral.hpp"

namespace slx {

// Affine change of boundary triplet: Gamma~_0 = R Gamma_0,
// Gamma~_1 = R^{-1}(Gamma_1 - Q Gamma_0) with R Hermitian positive definite
// and Q Hermitian. Weyl functions transform as M~ = R^{-1}(M - Q)R^{-1},
// boundary parameters as B~ = R^{-1}(B - Q)R^{-1}.
struct TripletTransform {
  Matrix r;
  Matrix q;

  // The transform undoing this one: (R^{-1}, -R^{-1} Q R^{-1}).
  TripletTransform inverse() const;
};

// Transform normalizing a Weyl function at z = i: given M(i), returns
// Q = Re M(i), R = (Im M(i))^{1/2}, so that M~(i) = i I. Errors:
// DegenerateImaginaryPart when Im M(i) is not positive definite.
TripletTransform regularize(const Matrix& m_at_i);

Matrix transform_weyl(const TripletTransform& tt, const Matrix& m_value);

Matrix transform_parameter(const TripletTransform& tt, const Matrix& b);

// Ordered blocks T_n, each carrying the transform that will be applied to
// its Weyl function inside direct sums. canonical() pairs every block with
// its own regularizing transform (the normalization that keeps infinite
// direct sums boundary triplets).
class BlockModel {
 public:
  struct Entry {
    SpectralMeasure m;
    TripletTransform tt;
  };

  explicit BlockModel(std::vector<Entry> entries);
  static BlockModel canonical(const std::vector<SpectralMeasure>& blocks);

  const std::vector<Entry>& entries() const { return m_entries; }
  int total_dim() const { return m_total_dim; }

 private:
  std::vector<Entry> m_entries;
  int m_total_dim;
};

// Block-diagonal direct sum of the per-block transformed Weyl functions at
// z. Real z evaluates boundary limits.
Matrix direct_sum_weyl(const BlockModel& bm, Complex z);

// Single block-diagonal measure for the whole sum. The essential edge is
// the minimum over blocks of each block's lowest eigenvalue (the finite
// list stands in for an unbounded repeating tail).
SpectralMeasure merge_blocks(const BlockModel& bm);

// Result of sampling x -> Re (h, (B_K - M_sum(-x))^{-1} h) along x_grid,
// with B_K the blockwise transformed Krein parameter. The limit x -> 0+
// must diverge to +infinity exactly when no defect element of the sum fits
// the Krein kernel; the empirical signature is growth at rate ~ 1/x.
struct DivergenceReport {
  std::vector<double> x;
  std::vector<double> value;
  std::vector<bool> skipped;  // singular pencil at this x

  bool increased_beyond(double threshold) const;
  // Least-squares slope of log(value) against log(1/x) over unskipped
  // positive entries; ~1 for a simple pole at 0.
  double rate() const;
};

DivergenceReport krein_divergence_check(const BlockModel& bm, const Vector& h,
                                        const std::vector<double>& x_grid);

}  // namespace slx
