#include "slx/triplets.hpp"

#include <cmath>
#include <numeric>

#include "slx/linalg.hpp"
#include "slx/weyl.hpp"

namespace slx {

TripletTransform TripletTransform::inverse() const {
  const Matrix r_inv = invert_pencil(r, 1e-14, ErrorCode::SolverFailure);
  TripletTransform out;
  out.r = r_inv;
  out.q = -r_inv * q * r_inv;
  return out;
}

TripletTransform regularize(const Matrix& m_at_i) {
  TripletTransform tt;
  tt.q = re_part(m_at_i);
  tt.r = psd_power(im_part(m_at_i), 0.5, ErrorCode::DegenerateImaginaryPart);
  return tt;
}

Matrix transform_weyl(const TripletTransform& tt, const Matrix& m_value) {
  const Matrix r_inv = invert_pencil(tt.r, 1e-14, ErrorCode::SolverFailure);
  return r_inv * (m_value - tt.q) * r_inv;
}

Matrix transform_parameter(const TripletTransform& tt, const Matrix& b) {
  return transform_weyl(tt, b);
}

BlockModel::BlockModel(std::vector<Entry> entries)
    : m_entries(std::move(entries)), m_total_dim(0) {
  if (m_entries.empty())
    fail(ErrorCode::EmptyGrid, "block model needs at least one block");
  for (const auto& e : m_entries) {
    if (e.tt.r.rows() != e.m.dim() || e.tt.q.rows() != e.m.dim())
      fail(ErrorCode::GridMismatch, "block transform dimension mismatch");
    m_total_dim += e.m.dim();
  }
}

BlockModel BlockModel::canonical(const std::vector<SpectralMeasure>& blocks) {
  std::vector<Entry> entries;
  entries.reserve(blocks.size());
  for (const auto& m : blocks)
    entries.push_back({m, regularize(weyl_base(m, Complex(0.0, 1.0)))});
  return BlockModel(std::move(entries));
}

namespace {

Matrix block_weyl(const BlockModel::Entry& e, Complex z) {
  Matrix mz = z.imag() == 0.0
                  ? boundary_value(e.m, RealizationKind::Dirichlet, z.real())
                  : weyl_base(e.m, z);
  return transform_weyl(e.tt, mz);
}

}  // namespace

Matrix direct_sum_weyl(const BlockModel& bm, Complex z) {
  Matrix out = Matrix::Zero(bm.total_dim(), bm.total_dim());
  int at = 0;
  for (const auto& e : bm.entries()) {
    out.block(at, at, e.m.dim(), e.m.dim()) = block_weyl(e, z);
    at += e.m.dim();
  }
  return out;
}

SpectralMeasure merge_blocks(const BlockModel& bm) {
  const int n = bm.total_dim();
  RealVector ev(n);
  Matrix u = Matrix::Zero(n, n);
  double edge = std::numeric_limits<double>::infinity();
  int at = 0;
  for (const auto& e : bm.entries()) {
    const int d = e.m.dim();
    ev.segment(at, d) = e.m.eigenvalues();
    u.block(at, at, d, d) = e.m.eigenvectors();
    edge = std::min(edge, e.m.eigenvalues()[0]);
    at += d;
  }
  // Re-sort ascending, permuting eigenvector columns alongside.
  std::vector<int> perm(static_cast<size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(),
                   [&](int a, int b) { return ev[a] < ev[b]; });
  RealVector ev_sorted(n);
  Matrix u_sorted(n, n);
  for (int j = 0; j < n; ++j) {
    ev_sorted[j] = ev[perm[static_cast<size_t>(j)]];
    u_sorted.col(j) = u.col(perm[static_cast<size_t>(j)]);
  }
  return SpectralMeasure(std::move(ev_sorted), std::move(u_sorted), edge);
}

bool DivergenceReport::increased_beyond(double threshold) const {
  double last = -std::numeric_limits<double>::infinity();
  bool beyond = false;
  for (size_t j = 0; j < value.size(); ++j) {
    if (skipped[j]) continue;
    if (value[j] < last) return false;  // must grow as x decreases
    last = value[j];
    beyond = value[j] > threshold;
  }
  return beyond;
}

double DivergenceReport::rate() const {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (size_t j = 0; j < value.size(); ++j) {
    if (skipped[j] || !(value[j] > 0.0)) continue;
    const double lx = std::log(1.0 / x[j]);
    const double ly = std::log(value[j]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) return 0.0;
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) return 0.0;
  return (n * sxy - sx * sy) / denom;
}

DivergenceReport krein_divergence_check(const BlockModel& bm, const Vector& h,
                                        const std::vector<double>& x_grid) {
  if (h.size() != bm.total_dim())
    fail(ErrorCode::GridMismatch, "probe vector dimension mismatch");
  if (x_grid.empty()) fail(ErrorCode::EmptyGrid, "empty x grid");
  for (double x : x_grid)
    if (!(x > 0.0)) fail(ErrorCode::BadGrid, "x grid must be positive");

  // Blockwise transformed Krein parameter -R^{-1}(sqrt(T) + Q)R^{-1}.
  Matrix bk = Matrix::Zero(bm.total_dim(), bm.total_dim());
  int at = 0;
  for (const auto& e : bm.entries()) {
    const Matrix root = apply_function(
        e.m, [](double t) { return Complex(-std::sqrt(t), 0.0); });
    bk.block(at, at, e.m.dim(), e.m.dim()) =
        transform_parameter(e.tt, root);
    at += e.m.dim();
  }

  DivergenceReport rep;
  for (double x : x_grid) {
    rep.x.push_back(x);
    try {
      const Matrix pencil = bk - direct_sum_weyl(bm, Complex(-x, 0.0));
      const Vector u = invert_pencil(pencil) * h;
      rep.value.push_back((h.adjoint() * u).value().real());
      rep.skipped.push_back(false);
    } catch (const Error& err) {
      if (err.code() != ErrorCode::SingularPencil) throw;
      rep.value.push_back(0.0);
      rep.skipped.push_back(true);
    }
  }
  return rep;
}

}  // namespace slx
