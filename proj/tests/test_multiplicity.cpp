#include <doctest.h>

#include <cmath>
#include <random>

#include "slx/multiplicity.hpp"
#include "slx/realizations.hpp"
#include "slx/sampling.hpp"
#include "test_helpers.hpp"

using slx::Matrix;
using slxtest::check_error_code;

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    out[static_cast<size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  return out;
}

slx::MultiplicityTable synthetic(std::vector<int> ranks) {
  slx::MultiplicityTable t;
  for (size_t i = 0; i < ranks.size(); ++i) {
    t.t.push_back(double(i));
    t.rank.push_back(ranks[i]);
    t.exceptional.push_back(false);
  }
  return t;
}

}  // namespace

TEST_SUITE("multiplicity") {

TEST_CASE("dirichlet table equals the counting function") {
  const auto m = slx::SpectralMeasure::from_eigenvalues({1.0, 4.0});
  const auto grid = linspace(0.0, 10.0, 200);
  const auto table = slx::multiplicity_table(
      m, slx::ExtensionParameter::dirichlet(), grid, 1e-8);

  REQUIRE(table.t.size() == grid.size());
  int exceptional = 0;
  for (size_t i = 0; i < grid.size(); ++i) {
    if (table.exceptional[i]) {
      ++exceptional;
      continue;
    }
    CHECK(table.rank[i] == slx::counting_function(m, grid[i]));
  }
  // Only the Krein-pole point t = 0 sits on the exceptional set here.
  CHECK(exceptional == 1);
  CHECK(table.exceptional[0]);
  CHECK(table.rank[0] == 0);  // limit copied from the nearest clean point
}

TEST_CASE("grid points on eigenvalues are flagged and neighbor-filled") {
  const auto m = slx::SpectralMeasure::from_eigenvalues({1.0});
  const std::vector<double> grid = {0.5, 1.0, 2.0};
  const auto table = slx::multiplicity_table(
      m, slx::ExtensionParameter::dirichlet(), grid, 1e-8);
  CHECK(!table.exceptional[0]);
  CHECK(table.exceptional[1]);
  CHECK(!table.exceptional[2]);
  CHECK(table.rank[0] == 0);
  CHECK(table.rank[1] == 0);  // copied from t = 0.5
  CHECK(table.rank[2] == 1);
}

TEST_CASE("canonical realizations share one table") {
  const auto m = slx::SpectralMeasure::from_eigenvalues({0.3, 2.0});
  // This grid hits both eigenvalues exactly; those points must be flagged
  // on every table and skipped by the comparison.
  const auto grid = linspace(0.0, 5.0, 101);
  const auto pd = slx::ExtensionParameter::dirichlet();
  const auto pn = slx::canonical_parameter(m, slx::RealizationKind::Neumann);
  const auto pk = slx::canonical_parameter(m, slx::RealizationKind::Krein);

  const auto td = slx::multiplicity_table(m, pd, grid);
  const auto tn = slx::multiplicity_table(m, pn, grid);
  const auto tk = slx::multiplicity_table(m, pk, grid);

  CHECK(slx::compare_tables(td, tn) == slx::TableOrder::Equal);
  CHECK(slx::compare_tables(td, tk) == slx::TableOrder::Equal);
  CHECK(slx::compare_tables(tn, tk) == slx::TableOrder::Equal);

  int flagged = 0;
  for (size_t i = 0; i < grid.size(); ++i) flagged += td.exceptional[i];
  CHECK(flagged == 3);  // t = 0, 0.3, 2.0
}

TEST_CASE("table comparison verdicts") {
  const auto a = synthetic({0, 1, 1});
  const auto b = synthetic({0, 1, 2});
  const auto c = synthetic({1, 0, 1});
  CHECK(slx::compare_tables(a, a) == slx::TableOrder::Equal);
  CHECK(slx::compare_tables(a, b) == slx::TableOrder::FirstLeqSecond);
  CHECK(slx::compare_tables(b, a) == slx::TableOrder::SecondLeqFirst);
  CHECK(slx::compare_tables(b, c) == slx::TableOrder::Incomparable);

  auto shifted = synthetic({0, 1, 1});
  shifted.t[2] = 7.0;
  check_error_code([&] { slx::compare_tables(a, shifted); },
                   slx::ErrorCode::GridMismatch);
}

TEST_CASE("ac band and closure") {
  const auto m = slx::SpectralMeasure::from_eigenvalues({0.7, 3.0});
  CHECK(slx::ac_band(m).t0 == 0.7);

  using Iv = std::pair<double, double>;
  const auto merged = slx::ac_closure({Iv{1.0, 2.0}, Iv{0.0, 1.0}});
  REQUIRE(merged.size() == 1);
  CHECK(merged[0] == Iv{0.0, 2.0});

  const auto contained = slx::ac_closure({Iv{0.0, 5.0}, Iv{1.0, 2.0}});
  REQUIRE(contained.size() == 1);
  CHECK(contained[0] == Iv{0.0, 5.0});

  const auto disjoint = slx::ac_closure({Iv{3.0, 4.0}, Iv{0.0, 1.0}});
  REQUIRE(disjoint.size() == 2);
  CHECK(disjoint[0] == Iv{0.0, 1.0});
  CHECK(disjoint[1] == Iv{3.0, 4.0});

  CHECK(slx::ac_closure({Iv{1.0, 1.0}}).empty());
  CHECK(slx::ac_closure(merged) == merged);  // idempotent
}

TEST_CASE("no realization drops below the dirichlet multiplicity") {
  const auto m = slx::SpectralMeasure::from_eigenvalues({1.0, 4.0});
  std::mt19937_64 rng(11);
  std::vector<slx::ExtensionParameter> ps = {
      slx::canonical_parameter(m, slx::RealizationKind::Neumann),
      slx::canonical_parameter(m, slx::RealizationKind::Krein),
      slx::ExtensionParameter::robin(slx::random_hermitian(2, rng, 2.0)),
      slx::ExtensionParameter::robin(slx::random_hermitian(2, rng, 0.3)),
  };
  const auto rep =
      slx::verify_ac_minimality(m, ps, linspace(0.0, 6.0, 60), 1e-8);
  CHECK(rep.ok);
  REQUIRE(rep.parameters.size() == ps.size());
  for (const auto& per : rep.parameters) {
    CHECK(per.ok);
    CHECK(per.first_violation == -1);
  }
}

TEST_CASE("input validation") {
  const auto m = slx::SpectralMeasure::from_eigenvalues({1.0});
  check_error_code(
      [&] {
        slx::multiplicity_table(m, slx::ExtensionParameter::dirichlet(), {});
      },
      slx::ErrorCode::EmptyGrid);
  check_error_code(
      [&] {
        slx::multiplicity_table(m, slx::ExtensionParameter::dirichlet(),
                                {1.0}, -1.0);
      },
      slx::ErrorCode::BadGrid);
}

}  // TEST_SUITE
