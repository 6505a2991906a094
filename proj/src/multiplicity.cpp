#include "slx/multiplicity.hpp"

#include <algorithm>
#include <cmath>

#include "slx/linalg.hpp"
#include "slx/weyl.hpp"

namespace slx {

namespace {

struct RankOutcome {
  int rank = 0;
  bool ambiguous = false;
};

// Rank of a Hermitian matrix under the relative cutoff
// rank_tol * max(1, ||a||). A value too close to a real pole of M_B has
// huge and tiny genuine eigenvalues at once; there the relative and the
// absolute cutoff disagree, and the point is reported as ambiguous so the
// caller can flag it like a collision instead of trusting either count.
RankOutcome hermitian_rank(const Matrix& a, double rank_tol) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    fail(ErrorCode::SolverFailure, "rank eigensolve failed");
  const double amax = es.eigenvalues().cwiseAbs().maxCoeff();
  const double rel_cut = rank_tol * std::max(1.0, amax);
  RankOutcome out;
  int r_abs = 0;
  for (Eigen::Index j = 0; j < es.eigenvalues().size(); ++j) {
    const double ev = std::abs(es.eigenvalues()(j));
    if (ev > rel_cut) ++out.rank;
    if (ev > rank_tol) ++r_abs;
  }
  out.ambiguous = (r_abs != out.rank);
  return out;
}

}  // namespace

MultiplicityTable multiplicity_table(const SpectralMeasure& m,
                                     const ExtensionParameter& p,
                                     const std::vector<double>& t_grid,
                                     double rank_tol) {
  if (t_grid.empty()) fail(ErrorCode::EmptyGrid, "empty t grid");
  if (!(rank_tol > 0.0)) fail(ErrorCode::BadGrid, "rank_tol must be positive");

  MultiplicityTable table;
  table.kind = p.is_dirichlet ? RealizationKind::Dirichlet
                              : RealizationKind::Robin;
  table.triplet = p.triplet;
  table.rank_tol = rank_tol;

  for (double t_raw : t_grid) {
    double t = t_raw;
    bool flagged = false;
    // Keep evaluation points clear of sigma(T) and of the Krein pole at 0.
    const double margin = 1e-6 * std::max(1.0, std::abs(t));
    auto collides = [&](double x) {
      if (std::abs(x) < 1e-6) return true;
      for (int j = 0; j < m.dim(); ++j)
        if (std::abs(x - m.eigenvalues()[j]) < margin) return true;
      return false;
    };
    if (collides(t)) {
      flagged = true;
      t = t + margin;
      if (collides(t)) t = t_raw + 2.5 * margin;
    }

    int rank = 0;
    try {
      const Matrix value =
          p.is_dirichlet
              ? boundary_value(m, RealizationKind::Dirichlet, t)
              : weyl_of_extension(m, p, Complex(t, 0.0)).value;
      const RankOutcome ro = hermitian_rank(im_part(value), rank_tol);
      rank = ro.rank;
      if (ro.ambiguous) {
        flagged = true;
        rank = -1;  // filled from a neighbor below
      }
    } catch (const Error& err) {
      if (err.code() != ErrorCode::SingularPencil &&
          err.code() != ErrorCode::EigenvalueCollision &&
          err.code() != ErrorCode::KreinAtZero)
        throw;
      flagged = true;
      rank = -1;  // filled from a neighbor below
    }
    table.t.push_back(t_raw);
    table.rank.push_back(rank);
    table.exceptional.push_back(flagged);
  }

  // Exceptional entries report the limit from the nearest clean point.
  const int n = static_cast<int>(table.t.size());
  for (int i = 0; i < n; ++i) {
    if (!table.exceptional[i] && table.rank[i] >= 0) continue;
    int best = -1;
    for (int d = 1; d < n; ++d) {
      const int lo = i - d, hi = i + d;
      if (lo >= 0 && !table.exceptional[lo]) { best = lo; break; }
      if (hi < n && !table.exceptional[hi]) { best = hi; break; }
    }
    if (table.rank[i] < 0) table.rank[i] = best >= 0 ? table.rank[best] : 0;
    else if (best >= 0) table.rank[i] = table.rank[best];
  }
  return table;
}

AcBand ac_band(const SpectralMeasure& m) { return AcBand{m.eigenvalues()[0]}; }

std::vector<std::pair<double, double>> ac_closure(
    std::vector<std::pair<double, double>> intervals) {
  std::vector<std::pair<double, double>> kept;
  for (auto& iv : intervals) {
    if (!(iv.second > iv.first)) continue;  // degenerate or reversed
    kept.push_back(iv);
  }
  std::sort(kept.begin(), kept.end());
  std::vector<std::pair<double, double>> out;
  for (const auto& iv : kept) {
    if (!out.empty() && iv.first <= out.back().second + 1e-12)
      out.back().second = std::max(out.back().second, iv.second);
    else
      out.push_back(iv);
  }
  return out;
}

TableOrder compare_tables(const MultiplicityTable& a,
                          const MultiplicityTable& b) {
  if (a.t.size() != b.t.size())
    fail(ErrorCode::GridMismatch, "tables use different grids");
  bool a_le = true, b_le = true;
  for (size_t i = 0; i < a.t.size(); ++i) {
    if (std::abs(a.t[i] - b.t[i]) > 1e-12 * std::max(1.0, std::abs(a.t[i])))
      fail(ErrorCode::GridMismatch, "tables use different grids");
    if (a.exceptional[i] || b.exceptional[i]) continue;
    if (a.rank[i] > b.rank[i]) a_le = false;
    if (b.rank[i] > a.rank[i]) b_le = false;
  }
  if (a_le && b_le) return TableOrder::Equal;
  if (a_le) return TableOrder::FirstLeqSecond;
  if (b_le) return TableOrder::SecondLeqFirst;
  return TableOrder::Incomparable;
}

MinimalityReport verify_ac_minimality(const SpectralMeasure& m,
                                      const std::vector<ExtensionParameter>& ps,
                                      const std::vector<double>& t_grid,
                                      double rank_tol) {
  const MultiplicityTable base = multiplicity_table(
      m, ExtensionParameter::dirichlet(), t_grid, rank_tol);
  MinimalityReport rep;
  for (const auto& p : ps) {
    MinimalityReport::PerParameter per;
    if (p.is_dirichlet) {
      rep.parameters.push_back(per);
      continue;
    }
    const MultiplicityTable table =
        multiplicity_table(m, p, t_grid, rank_tol);
    for (size_t i = 0; i < t_grid.size(); ++i) {
      if (base.exceptional[i] || table.exceptional[i]) continue;
      if (base.rank[i] > table.rank[i]) {
        per.ok = false;
        per.first_violation = static_cast<int>(i);
        break;
      }
    }
    rep.ok = rep.ok && per.ok;
    rep.parameters.push_back(per);
  }
  return rep;
}

}  // namespace slx
