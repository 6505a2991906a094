#include <doctest.h>

#include <cmath>

#include "slx/linalg.hpp"
#include "slx/realizations.hpp"
#include "slx/triplets.hpp"
#include "slx/weyl.hpp"
#include "test_helpers.hpp"

using slx::Complex;
using slx::Grid;
using slx::GridFunction;
using slx::Matrix;
using slxtest::check_close;
using slxtest::check_error_code;

namespace {

const Complex kI(0.0, 1.0);

GridFunction sample_profile(const Grid& grid, int dim,
                            double (*profile)(double)) {
  Matrix vals(grid.n + 1, dim);
  for (int k = 0; k <= grid.n; ++k)
    for (int j = 0; j < dim; ++j)
      vals(k, j) = Complex(profile(grid.node(k)) / std::sqrt(double(dim)), 0.0);
  return GridFunction(grid, vals);
}

double bump(double x) { return x * x * std::exp(-x); }
double bump2(double x) { return x * x * std::exp(-2.0 * x); }

}  // namespace

TEST_SUITE("realizations") {

TEST_CASE("grids and grid functions") {
  const Grid g = Grid::with_length(0.25, 2.0);
  CHECK(g.n == 8);
  CHECK(g.length() == doctest::Approx(2.0));
  check_error_code([&] { Grid::with_length(-0.1, 2.0); },
                   slx::ErrorCode::BadGrid);

  Matrix ones = Matrix::Ones(g.n + 1, 1);
  const GridFunction f(g, ones);
  // Trapezoid of 1 over [0, 2].
  CHECK(f.inner(f).real() == doctest::Approx(2.0));
  // Conjugate linearity in the first slot.
  const GridFunction fi(g, Complex(0.0, 2.0) * ones);
  check_close(fi.inner(f), Complex(0.0, -4.0), 1e-12);

  const Grid other = Grid::with_length(0.25, 3.0);
  const GridFunction h(other, Matrix::Ones(other.n + 1, 1));
  check_error_code([&] { f.inner(h); }, slx::ErrorCode::GridMismatch);
}

TEST_CASE("default grid heuristic") {
  const auto zero = slx::SpectralMeasure::from_eigenvalues({0.0});
  const Grid g = slx::default_grid(zero, kI);
  CHECK(g.h == doctest::Approx(1.0 / 200.0));
  // 30 / sqrt(Im sqrt(i)) = 30 / sqrt(sqrt(2)/2).
  CHECK(g.length() ==
        doctest::Approx(30.0 / std::sqrt(std::sqrt(0.5))).epsilon(1e-3));
  check_error_code([&] { slx::default_grid(zero, Complex(2.0, 0.0)); },
                   slx::ErrorCode::OnSpectrumWithoutLimit);
}

TEST_CASE("canonical parameters") {
  const auto m = slx::SpectralMeasure::from_eigenvalues({1.0, 4.0});
  CHECK(slx::canonical_parameter(m, slx::RealizationKind::Dirichlet)
            .is_dirichlet);
  CHECK(slx::op_norm(
            slx::canonical_parameter(m, slx::RealizationKind::Neumann).b) ==
        0.0);
  const Matrix bk = slx::canonical_parameter(m, slx::RealizationKind::Krein).b;
  check_close(bk(0, 0), Complex(-1.0, 0.0), 1e-14);
  check_close(bk(1, 1), Complex(-2.0, 0.0), 1e-14);

  // Regularized coordinates agree with applying the transform by hand.
  const auto one = slx::SpectralMeasure::from_eigenvalues({1.0});
  const auto tt = slx::regularize(slx::weyl_base(one, kI));
  const Matrix breg =
      slx::canonical_parameter(one, slx::RealizationKind::Krein,
                               slx::TripletTag::Regularized)
          .b;
  CHECK(slx::op_norm(breg - slx::transform_parameter(
                                tt, -Matrix::Identity(1, 1))) <= 1e-13);

  check_error_code(
      [&] { slx::canonical_parameter(m, slx::RealizationKind::Robin); },
      slx::ErrorCode::ConfigParse);
}

TEST_CASE("defect elements decay and start at the boundary vector") {
  const auto zero = slx::SpectralMeasure::from_eigenvalues({0.0});
  const Grid g = Grid::with_length(0.01, 5.0);
  slx::Vector h1(1);
  h1 << Complex(1.0, 0.0);
  const GridFunction gamma = slx::gamma_apply(zero, kI, h1, g);
  for (int k = 0; k <= g.n; k += 50)
    CHECK(std::abs(gamma.values()(k, 0)) ==
          doctest::Approx(std::exp(-g.node(k) / std::sqrt(2.0)))
              .epsilon(1e-10));

  const auto m = slx::SpectralMeasure::from_eigenvalues({1.0, 4.0});
  slx::Vector h2(2);
  h2 << Complex(1.0, 0.0), Complex(0.0, 2.0);
  const GridFunction gm = slx::gamma_apply(m, Complex(1.0, 1.0), h2, g);
  check_close(gm.values()(0, 0), h2(0), 1e-13);
  check_close(gm.values()(0, 1), h2(1), 1e-13);

  // Interior FD residual of -gamma'' + (T - z) gamma is O(h^2).
  const Grid fine = Grid::with_length(1e-3, 3.0);
  const GridFunction gf = slx::gamma_apply(m, Complex(1.0, 1.0), h2, fine);
  const Matrix t = m.matrix();
  double resid = 0.0;
  for (int k = 1; k < fine.n; ++k) {
    const slx::Vector ddf =
        (gf.values().row(k + 1) - 2.0 * gf.values().row(k) +
         gf.values().row(k - 1))
            .transpose() /
        (fine.h * fine.h);
    const slx::Vector row = gf.values().row(k).transpose();
    resid = std::max(
        resid, (-ddf + t * row - Complex(1.0, 1.0) * row).norm());
  }
  CHECK(resid <= 1e-5);
}

TEST_CASE("adjoint defect integral matches the closed form") {
  const auto zero = slx::SpectralMeasure::from_eigenvalues({0.0});
  const Grid g = Grid::with_length(2.5e-4, 30.0);
  Matrix vals(g.n + 1, 1);
  for (int k = 0; k <= g.n; ++k)
    vals(k, 0) = Complex(std::exp(-g.node(k)), 0.0);
  const slx::Vector out =
      slx::gamma_adjoint_apply(zero, kI, GridFunction(g, vals));
  // int_0^inf e^{i x sqrt(i)} e^{-x} dx = (1 - i sqrt(i))^{-1}.
  check_close(out(0), 1.0 / (1.0 - kI * slx::branch_sqrt(kI)), 1e-7);
}

TEST_CASE("dirichlet resolvent solves the equation") {
  const auto m = slx::SpectralMeasure::from_eigenvalues({1.0});
  const Grid g = Grid::with_length(1.0 / 200.0, 20.0);
  // Box source with kinks at 1 and 2.
  Matrix vals = Matrix::Zero(g.n + 1, 1);
  for (int k = 0; k <= g.n; ++k)
    if (g.node(k) >= 1.0 && g.node(k) <= 2.0) vals(k, 0) = 1.0;
  const GridFunction f(g, vals);
  const Complex z(-1.0, 0.0);
  const GridFunction sol = slx::dirichlet_resolvent_apply(m, z, f);

  CHECK(sol.values().row(0).norm() == 0.0);  // hard boundary condition

  double resid = 0.0;
  for (int k = 1; k < g.n; ++k) {
    const double x = g.node(k);
    if (std::abs(x - 1.0) <= 2.5 * g.h || std::abs(x - 2.0) <= 2.5 * g.h)
      continue;  // the kinks of f defeat the FD stencil
    const Complex ddf = (sol.values()(k + 1, 0) - 2.0 * sol.values()(k, 0) +
                         sol.values()(k - 1, 0)) /
                        (g.h * g.h);
    const Complex want = vals(k, 0);
    resid = std::max(resid, std::abs(-ddf + (1.0 - z) * sol.values()(k, 0) -
                                     want));
  }
  CHECK(resid <= 1e-3);
}

TEST_CASE("robin resolvent satisfies its boundary condition") {
  const auto m = slx::SpectralMeasure::from_eigenvalues({2.0});
  const Matrix b = Matrix::Identity(1, 1) * Complex(0.5, 0.0);
  const auto p = slx::ExtensionParameter::robin(b);
  const Grid g = Grid::with_length(1.0 / 400.0, 30.0);
  const GridFunction f = sample_profile(g, 1, bump);
  const GridFunction sol =
      slx::krein_resolvent_apply(m, p, Complex(1.0, 1.0), f);

  // One-sided second-order derivative at 0 against B g(0).
  const Complex d0 = (-3.0 * sol.values()(0, 0) + 4.0 * sol.values()(1, 0) -
                      sol.values()(2, 0)) /
                     (2.0 * g.h);
  const double scale = sol.values().cwiseAbs().maxCoeff();
  CHECK(std::abs(d0 - 0.5 * sol.values()(0, 0)) <= 1e-3 * std::max(1.0, scale));
}

TEST_CASE("first resolvent identity") {
  const auto m = slx::SpectralMeasure::from_eigenvalues({1.0});
  const auto p =
      slx::ExtensionParameter::robin(Matrix::Identity(1, 1) * Complex(0.5, 0.0));
  const Grid g = Grid::with_length(1.0 / 4000.0, 30.0);
  const GridFunction f = sample_profile(g, 1, bump);
  const Complex z1(1.0, 1.0), z2(-2.0, 0.0);

  const GridFunction r1 = slx::krein_resolvent_apply(m, p, z1, f);
  const GridFunction r2 = slx::krein_resolvent_apply(m, p, z2, f);
  const GridFunction r12 = slx::krein_resolvent_apply(m, p, z1, r2);

  const Matrix lhs = r1.values() - r2.values();
  const Matrix rhs = (z1 - z2) * r12.values();
  const GridFunction diff(g, lhs - rhs);
  const GridFunction ref(g, lhs);
  CHECK(diff.norm() <= 1e-6 * std::max(1.0, ref.norm()));
}

TEST_CASE("resolvent is self-adjoint under conjugation of z") {
  const auto m = slx::SpectralMeasure::from_eigenvalues({2.0});
  const auto p =
      slx::ExtensionParameter::robin(Matrix::Identity(1, 1) * Complex(0.3, 0.0));
  const Grid g = Grid::with_length(5e-5, 30.0);
  const GridFunction f = sample_profile(g, 1, bump);
  const GridFunction h = sample_profile(g, 1, bump2);
  const Complex z(1.0, 2.0);

  const Complex lhs = h.inner(slx::krein_resolvent_apply(m, p, z, f));
  const Complex rhs =
      slx::krein_resolvent_apply(m, p, std::conj(z), h).inner(f);
  CHECK(std::abs(lhs - rhs) <= 1e-8);
}

TEST_CASE("krein kernel basis") {
  const auto m = slx::SpectralMeasure::from_eigenvalues({1.0, 4.0});
  const Grid g = Grid::with_length(1e-3, 30.0);
  const auto basis = slx::krein_kernel_basis(m, g);
  REQUIRE(basis.size() == 2);

  // || e^{-x sqrt(t)} ||_{L^2}^2 = 1 / (2 sqrt(t)).
  CHECK(basis[0].norm() ==
        doctest::Approx(std::sqrt(0.5)).epsilon(1e-5));
  CHECK(basis[1].norm() == doctest::Approx(0.5).epsilon(1e-5));

  // Krein boundary condition g'(0) + sqrt(T) g(0) = 0, one-sided stencil.
  for (int j = 0; j < 2; ++j) {
    const double root = std::sqrt(m.eigenvalues()[j]);
    const slx::Vector d0 = (-3.0 * basis[size_t(j)].values().row(0) +
                            4.0 * basis[size_t(j)].values().row(1) -
                            basis[size_t(j)].values().row(2))
                               .transpose() /
                           (2.0 * g.h);
    const slx::Vector v0 = basis[size_t(j)].values().row(0).transpose();
    CHECK((d0 + root * v0).norm() <= 1e-4);
  }

  const auto with_zero = slx::SpectralMeasure::from_eigenvalues({0.0, 1.0});
  check_error_code([&] { slx::krein_kernel_basis(with_zero, g); },
                   slx::ErrorCode::ZeroEigenvalue);
}

}  // TEST_SUITE
