#pragma once

#include <vector>

#include "slx/extension.hpp"
#include "slx/spectral.hpp"

namespace slx {

// Pointwise spectral multiplicity of the ac part of a realization, read off
// as rank Im M_B(t + i0) over a real grid. Points too close to the
// exceptional set sigma(T) union {0} are auto-perturbed and flagged; flagged
// ranks are copies of the nearest clean neighbor and comparisons skip them.
struct MultiplicityTable {
  RealizationKind kind = RealizationKind::Dirichlet;
  TripletTag triplet = TripletTag::Base;
  double rank_tol = 1e-8;
  std::vector<double> t;
  std::vector<int> rank;
  std::vector<bool> exceptional;
};

// The ac band of every realization of this model: [t0, inf).
struct AcBand {
  double t0 = 0.0;
};

MultiplicityTable multiplicity_table(const SpectralMeasure& m,
                                     const ExtensionParameter& p,
                                     const std::vector<double>& t_grid,
                                     double rank_tol = 1e-8);

AcBand ac_band(const SpectralMeasure& m);

// Union of half-open intervals [a, b): merge overlaps and adjacency, drop
// degenerate [a, a].
std::vector<std::pair<double, double>> ac_closure(
    std::vector<std::pair<double, double>> intervals);

enum class TableOrder { Equal, FirstLeqSecond, SecondLeqFirst, Incomparable };

// Pointwise comparison over the shared non-exceptional grid points.
TableOrder compare_tables(const MultiplicityTable& a,
                          const MultiplicityTable& b);

struct MinimalityReport {
  struct PerParameter {
    bool ok = true;
    int first_violation = -1;  // index into the grid, -1 when ok
  };
  bool ok = true;
  std::vector<PerParameter> parameters;
};

// Checks rank Im M(t+i0) <= rank Im M_B(t+i0) at every non-exceptional grid
// point, for each parameter: no realization can have smaller ac multiplicity
// than the Dirichlet one.
MinimalityReport verify_ac_minimality(const SpectralMeasure& m,
                                      const std::vector<ExtensionParameter>& ps,
                                      const std::vector<double>& t_grid,
                                      double rank_tol = 1e-8);

}  // namespace slx
