#include "slx/oracle_fd.hpp"

#include <Eigen/SparseLU>
#include <cmath>
#include <random>

#include "slx/linalg.hpp"

namespace slx {

DiscretizedOperator::DiscretizedOperator(Grid grid, int dim,
                                         OracleBoundary boundary,
                                         Eigen::SparseMatrix<Complex> matrix,
                                         RealVector mass_sqrt, int first_node,
                                         Matrix b)
    : m_grid(grid),
      m_dim(dim),
      m_boundary(boundary),
      m_matrix(std::move(matrix)),
      m_mass_sqrt(std::move(mass_sqrt)),
      m_first_node(first_node),
      m_b(std::move(b)) {}

namespace {

using Trip = Eigen::Triplet<Complex>;

void add_block(std::vector<Trip>& trips, int row_node, int col_node,
               const Matrix& block, int dim) {
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) {
      const Complex v = block(a, b);
      if (v != Complex(0.0, 0.0))
        trips.emplace_back(row_node * dim + a, col_node * dim + b, v);
    }
}

DiscretizedOperator assemble(const SpectralMeasure& m, const Grid& grid,
                             OracleBoundary boundary, const Matrix& b_robin) {
  const int dim = m.dim();
  const int n = grid.n;
  if (n < 4) fail(ErrorCode::BadGrid, "oracle grid needs at least 4 cells");
  const double w = 1.0 / (grid.h * grid.h);
  const Matrix t = m.matrix();
  const Matrix id = Matrix::Identity(dim, dim);

  const bool left_unknown = boundary == OracleBoundary::HalflineRobin ||
                            boundary == OracleBoundary::IntervalNN;
  const bool right_unknown = boundary == OracleBoundary::IntervalNN;
  const int first = left_unknown ? 0 : 1;
  const int last = right_unknown ? n : n - 1;  // inclusive in grid nodes
  const int nodes = last - first + 1;

  std::vector<Trip> trips;
  trips.reserve(static_cast<size_t>(nodes) * dim * (dim + 2));
  RealVector mass_sqrt = RealVector::Ones(nodes * dim);
  const double half = std::sqrt(0.5);

  // Half-weight nodes carry the trapezoid mass 1/2 of the ghost-eliminated
  // boundary row; the stored matrix is M^{-1/2} H M^{-1/2}, so those rows
  // get doubled diagonals and sqrt(2) couplings while staying Hermitian.
  auto is_half = [&](int node) {
    return (left_unknown && node == 0) || (right_unknown && node == n);
  };
  for (int node = first; node <= last; ++node) {
    const int row = node - first;
    Matrix diag = 2.0 * w * id + t;
    if (node == 0 && boundary == OracleBoundary::HalflineRobin)
      diag += (2.0 / grid.h) * b_robin;
    if (is_half(node)) mass_sqrt.segment(row * dim, dim).setConstant(half);
    add_block(trips, row, row, diag, dim);
    for (int nb : {node - 1, node + 1}) {
      if (nb < first || nb > last) continue;
      const double factor =
          (is_half(node) || is_half(nb)) ? std::sqrt(2.0) : 1.0;
      add_block(trips, row, nb - first, -w * factor * id, dim);
    }
  }

  Eigen::SparseMatrix<Complex> h(nodes * dim, nodes * dim);
  h.setFromTriplets(trips.begin(), trips.end());
  return DiscretizedOperator(grid, dim, boundary, std::move(h),
                             std::move(mass_sqrt), first, b_robin);
}

}  // namespace

DiscretizedOperator discretize_halfline(const SpectralMeasure& m,
                                        const ExtensionParameter& p, double h,
                                        double length) {
  const Grid grid = Grid::with_length(h, length);
  if (p.is_dirichlet)
    return assemble(m, grid, OracleBoundary::HalflineDirichlet,
                    Matrix::Zero(m.dim(), m.dim()));
  if (p.b.rows() != m.dim() || p.b.cols() != m.dim())
    fail(ErrorCode::GridMismatch, "Robin parameter dimension mismatch");
  if ((p.b - p.b.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
    fail(ErrorCode::NotHermitian, "Robin parameter must be Hermitian");
  if (p.triplet != TripletTag::Base)
    fail(ErrorCode::ConfigParse,
         "oracle expects the parameter in base-triplet coordinates");
  return assemble(m, grid, OracleBoundary::HalflineRobin, p.b);
}

DiscretizedOperator discretize_interval(const SpectralMeasure& m,
                                        IntervalBc bc, int cells,
                                        double length) {
  if (cells < 4) fail(ErrorCode::BadGrid, "need at least 4 cells");
  Grid grid;
  grid.h = length / cells;
  grid.n = cells;
  return assemble(m, grid,
                  bc == IntervalBc::DD ? OracleBoundary::IntervalDD
                                       : OracleBoundary::IntervalNN,
                  Matrix::Zero(m.dim(), m.dim()));
}

namespace {

RealVector lanczos_smallest(const Eigen::SparseMatrix<Complex>& a, int k,
                            double sigma) {
  const int n = static_cast<int>(a.rows());
  Eigen::SparseMatrix<Complex> shifted = a;
  {
    Eigen::SparseMatrix<Complex> ident(n, n);
    ident.setIdentity();
    shifted -= sigma * ident;
  }
  Eigen::SparseLU<Eigen::SparseMatrix<Complex>> lu;
  lu.compute(shifted);
  if (lu.info() != Eigen::Success)
    fail(ErrorCode::SolverFailure, "shift factorization failed");

  const int steps = std::min(n, std::max(6 * k + 60, 160));
  Matrix v(n, steps);
  RealVector alpha(steps), beta(steps);
  std::mt19937_64 rng(0x5eedbeefULL);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector work(n);
  for (int i = 0; i < n; ++i) work(i) = Complex(gauss(rng), 0.0);
  work /= work.norm();
  v.col(0) = work;

  int built = 0;
  for (int j = 0; j < steps; ++j) {
    built = j + 1;
    work = lu.solve(v.col(j));
    if (j > 0) work -= beta(j - 1) * v.col(j - 1);
    alpha(j) = (v.col(j).adjoint() * work).value().real();
    work -= alpha(j) * v.col(j);
    // Full reorthogonalization, twice, keeps the basis clean at this scale.
    for (int pass = 0; pass < 2; ++pass)
      work -= v.leftCols(built) * (v.leftCols(built).adjoint() * work);
    beta(j) = work.norm();
    if (j + 1 < steps) {
      if (beta(j) < 1e-13) break;  // invariant subspace captured
      v.col(j + 1) = work / beta(j);
    }
  }

  Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(built, built);
  for (int j = 0; j < built; ++j) {
    tri(j, j) = alpha(j);
    if (j + 1 < built) {
      tri(j, j + 1) = beta(j);
      tri(j + 1, j) = beta(j);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tes(tri);
  if (tes.info() != Eigen::Success)
    fail(ErrorCode::SolverFailure, "tridiagonal eigensolve failed");

  if (built < k)
    fail(ErrorCode::SolverFailure, "Lanczos breakdown before k pairs");
  const double theta_scale =
      std::max(std::abs(tes.eigenvalues()(0)),
               std::abs(tes.eigenvalues()(built - 1)));
  const bool exact_subspace = built < steps || built == n;
  RealVector out(k);
  for (int i = 0; i < k; ++i) {
    const int idx = built - 1 - i;  // largest theta <-> smallest eigenvalue
    const double theta = tes.eigenvalues()(idx);
    const double resid =
        built < steps ? 0.0
                      : std::abs(beta(built - 1) *
                                 tes.eigenvectors()(built - 1, idx));
    if (!exact_subspace && resid > 1e-8 * theta_scale)
      fail(ErrorCode::SolverFailure, "Lanczos pair " + std::to_string(i) +
                                         " unconverged (residual " +
                                         std::to_string(resid) + ")");
    if (theta == 0.0)
      fail(ErrorCode::SolverFailure, "spurious zero Ritz value");
    out(i) = sigma + 1.0 / theta;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

RealVector spectrum(const DiscretizedOperator& d, int k) {
  const int n = static_cast<int>(d.matrix().rows());
  if (k < 1 || k > n) fail(ErrorCode::BadGrid, "k out of range");
  if (n <= 2500) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(Matrix(d.matrix()));
    if (es.info() != Eigen::Success)
      fail(ErrorCode::SolverFailure, "dense eigensolve failed");
    return es.eigenvalues().head(k);
  }
  // Shift below the spectrum: realizations here are bounded below by
  // -||B||^2 (and by ~0 up to O(h^2) for B >= -sqrt(T)).
  const double sigma = -(2.0 + std::pow(op_norm(d.robin_parameter()), 2));
  return lanczos_smallest(d.matrix(), k, sigma);
}

GridFunction oracle_resolvent_apply(const DiscretizedOperator& d, Complex z,
                                    const GridFunction& f) {
  const Grid& grid = d.grid();
  if (f.grid().n != grid.n || std::abs(f.grid().h - grid.h) > 1e-12 * grid.h)
    fail(ErrorCode::GridMismatch, "grid mismatch");
  if (f.dim() != d.dim()) fail(ErrorCode::GridMismatch, "dim mismatch");

  const int rows = static_cast<int>(d.matrix().rows());
  Vector rhs(rows);
  for (int node = 0; node < d.unknown_nodes(); ++node)
    for (int c = 0; c < d.dim(); ++c)
      rhs(node * d.dim() + c) = d.mass_sqrt()(node * d.dim() + c) *
                                f.values()(node + d.first_node(), c);

  Eigen::SparseMatrix<Complex> shifted = d.matrix();
  {
    Eigen::SparseMatrix<Complex> ident(rows, rows);
    ident.setIdentity();
    shifted -= z * ident;
  }
  Eigen::SparseLU<Eigen::SparseMatrix<Complex>> lu;
  lu.compute(shifted);
  if (lu.info() != Eigen::Success)
    fail(ErrorCode::ShiftOnSpectrum, "factorization failed at this z");
  const Vector sol = lu.solve(rhs);
  const double resid = (shifted * sol - rhs).norm();
  if (!(resid <= 1e-8 * std::max(1.0, rhs.norm())))
    fail(ErrorCode::ShiftOnSpectrum,
         "solve residual " + std::to_string(resid) + "; z on the discrete "
         "spectrum?");

  Matrix out = Matrix::Zero(grid.n + 1, d.dim());
  for (int node = 0; node < d.unknown_nodes(); ++node)
    for (int c = 0; c < d.dim(); ++c)
      out(node + d.first_node(), c) =
          sol(node * d.dim() + c) / d.mass_sqrt()(node * d.dim() + c);
  return GridFunction(grid, std::move(out));
}

std::vector<double> interval_spectrum_formula(const SpectralMeasure& m,
                                              IntervalBc bc, int count,
                                              double length) {
  if (count < 1) fail(ErrorCode::EmptyGrid, "count must be >= 1");
  std::vector<double> values;
  const int k0 = bc == IntervalBc::DD ? 1 : 0;
  const double unit = M_PI / length;
  for (int k = k0; k <= k0 + count; ++k)
    for (int j = 0; j < m.dim(); ++j)
      values.push_back(k * unit * k * unit + m.eigenvalues()[j]);
  std::sort(values.begin(), values.end());
  values.resize(static_cast<size_t>(count));
  return values;
}

EnergyIdentityReport energy_identity_check(const SpectralMeasure& m,
                                           const GridFunction& f) {
  if (f.dim() != m.dim()) fail(ErrorCode::GridMismatch, "dim mismatch");
  const Grid& grid = f.grid();
  if (grid.n < 8) fail(ErrorCode::BadGrid, "grid too coarse");
  const double scale = f.values().cwiseAbs().maxCoeff();
  if (scale == 0.0) return EnergyIdentityReport{};  // 0/0 convention: 0

  const double f0 = f.values().row(0).norm();
  if (f0 > 1e-10 * scale)
    fail(ErrorCode::BoundaryViolation, "f(0) != 0");
  const double d0 = (4.0 * f.values().row(1) - f.values().row(2) -
                     3.0 * f.values().row(0))
                        .norm() /
                    (2.0 * grid.h);
  if (d0 > 1e3 * grid.h * grid.h * (1.0 + scale) + 1e-10)
    fail(ErrorCode::BoundaryViolation, "f'(0) != 0");
  if (f.values().row(grid.n).norm() > 1e-3 * scale)
    fail(ErrorCode::BoundaryViolation, "f has not decayed by L");

  const Matrix t = m.matrix();
  const Matrix root_t =
      apply_function(m, [](double v) { return Complex(std::sqrt(v), 0.0); });
  const double w = 1.0 / (grid.h * grid.h);

  double nrm_af = 0.0, nrm_dd = 0.0, nrm_tf = 0.0, nrm_rd = 0.0;
  for (int k = 1; k < grid.n; ++k) {
    const Vector fk = f.values().row(k).transpose();
    const Vector ddf = w * (f.values().row(k + 1) - 2.0 * f.values().row(k) +
                            f.values().row(k - 1))
                               .transpose();
    const Vector df = (f.values().row(k + 1) - f.values().row(k - 1))
                          .transpose() /
                      (2.0 * grid.h);
    const Vector tf = t * fk;
    nrm_af += (tf - ddf).squaredNorm();
    nrm_dd += ddf.squaredNorm();
    nrm_tf += tf.squaredNorm();
    nrm_rd += (root_t * df).squaredNorm();
  }
  EnergyIdentityReport rep;
  rep.lhs = grid.h * nrm_af;
  rep.rhs = grid.h * (nrm_dd + nrm_tf + 2.0 * nrm_rd);
  rep.residual = std::abs(rep.lhs - rep.rhs) /
                 std::max({rep.lhs, rep.rhs, 1e-300});
  return rep;
}

namespace {

// Integral of the piecewise-linear interpolant of q over [a, b], with
// constant extension beyond the sampled box.
double integrate_extended(const std::vector<double>& q, double x0, double h,
                          double a, double b) {
  const int n = static_cast<int>(q.size());
  const double xn = x0 + h * (n - 1);
  double acc = 0.0;
  if (a < x0) {
    acc += (std::min(b, x0) - a) * q.front();
    a = x0;
  }
  if (b > xn) {
    acc += (b - std::max(a, xn)) * q.back();
    b = xn;
  }
  if (a >= b) return acc;
  auto value_at = [&](double x) {
    const int cell = std::min(n - 2, std::max(0, int((x - x0) / h)));
    const double s = (x - (x0 + cell * h)) / h;
    return q[static_cast<size_t>(cell)] * (1.0 - s) +
           q[static_cast<size_t>(cell) + 1] * s;
  };
  const int first_cell = std::max(0, int(std::ceil((a - x0) / h - 1e-12)));
  const int last_cell = std::min(n - 1, int(std::floor((b - x0) / h + 1e-12)));
  // partial cell on the left, whole cells, partial cell on the right
  double lo = a;
  for (int k = first_cell; k <= last_cell; ++k) {
    const double node = x0 + k * h;
    if (node > lo) {
      acc += (node - lo) * 0.5 * (value_at(lo) + q[static_cast<size_t>(k)]);
      lo = node;
    }
  }
  if (b > lo) acc += (b - lo) * 0.5 * (value_at(lo) + value_at(b));
  return acc;
}

}  // namespace

KatoReport kato_condition_check(const std::vector<double>& q_samples,
                                double box_length, double window,
                                double threshold) {
  if (q_samples.size() < 3)
    fail(ErrorCode::TooFewSamples, "need at least 3 samples of q");
  if (!(box_length > 0.0) || !(window > 0.0))
    fail(ErrorCode::BadGrid, "box and window must be positive");
  for (double q : q_samples)
    if (!(q >= 0.0)) fail(ErrorCode::NegativePotential, "q must be >= 0");

  const int n = static_cast<int>(q_samples.size());
  const double x0 = -0.5 * box_length;
  const double h = box_length / (n - 1);
  KatoReport rep;
  rep.threshold = threshold;
  for (int j = 0; j < n; ++j) {
    const double c = x0 + j * h;
    rep.center.push_back(c);
    rep.profile.push_back(
        integrate_extended(q_samples, x0, h, c - window, c + window));
  }
  rep.consistent =
      std::max(rep.profile.front(), rep.profile.back()) <= threshold;
  return rep;
}

}  // namespace slx
