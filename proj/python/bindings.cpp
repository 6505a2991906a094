// Python bindings for the half-line extension-theory library.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>

#include "slx/multiplicity.hpp"
#include "slx/oracle_fd.hpp"
#include "slx/realizations.hpp"
#include "slx/triplets.hpp"
#include "slx/verify.hpp"
#include "slx/weyl.hpp"

namespace py = pybind11;

using slx::Complex;
using slx::Matrix;

namespace {

slx::RealizationKind kind_of(const std::string& name) {
  if (name == "dirichlet") return slx::RealizationKind::Dirichlet;
  if (name == "neumann") return slx::RealizationKind::Neumann;
  if (name == "krein") return slx::RealizationKind::Krein;
  if (name == "robin") return slx::RealizationKind::Robin;
  slx::fail(slx::ErrorCode::ConfigParse,
            "kind must be dirichlet, neumann, krein or robin");
}

slx::TripletTag tag_of(const std::string& name) {
  if (name == "base") return slx::TripletTag::Base;
  if (name == "regularized") return slx::TripletTag::Regularized;
  slx::fail(slx::ErrorCode::ConfigParse, "triplet must be base or regularized");
}

slx::IntervalBc bc_of(const std::string& name) {
  if (name == "dd") return slx::IntervalBc::DD;
  if (name == "nn") return slx::IntervalBc::NN;
  slx::fail(slx::ErrorCode::ConfigParse, "bc must be dd or nn");
}

slx::GridFunction to_grid_function(const Matrix& values, double h) {
  slx::Grid g;
  g.h = h;
  g.n = static_cast<int>(values.rows()) - 1;
  return slx::GridFunction(g, values);
}

slx::ExtensionParameter to_param(const std::optional<Matrix>& b,
                                 const std::string& triplet) {
  if (!b.has_value()) return slx::ExtensionParameter::dirichlet();
  return slx::ExtensionParameter::robin(*b, tag_of(triplet));
}

}  // namespace

PYBIND11_MODULE(_slx, mod) {
  mod.doc() =
      "Extension theory of half-line Sturm-Liouville operators "
      "-d^2/dt^2 + T with nonnegative matrix potential: Weyl functions, "
      "boundary-triplet transforms, Krein-type resolvents, multiplicity "
      "tables and an independent finite-difference oracle.";
  mod.attr("__version__") = "0.1.0";

  py::register_exception<slx::Error>(mod, "Error");

  py::class_<slx::SpectralMeasure>(mod, "SpectralMeasure",
                                   "Finite Hermitian model of the potential "
                                   "T = U diag(t_j) U* with t_j >= 0.")
      .def(py::init([](const std::vector<double>& eigenvalues,
                       std::optional<double> essential_edge) {
             return slx::SpectralMeasure::from_eigenvalues(eigenvalues,
                                                           essential_edge);
           }),
           py::arg("eigenvalues"), py::arg("essential_edge") = py::none())
      .def_static(
          "from_matrix",
          [](const Matrix& h, std::optional<double> essential_edge) {
            return slx::spectral_measure_from_matrix(h, essential_edge);
          },
          py::arg("h"), py::arg("essential_edge") = py::none())
      .def_static(
          "from_schrodinger",
          [](const std::vector<double>& q, double length) {
            return slx::spectral_measure_from_schrodinger_1d(q, length);
          },
          py::arg("q"), py::arg("length"))
      .def_property_readonly("dim", &slx::SpectralMeasure::dim)
      .def_property_readonly(
          "eigenvalues",
          [](const slx::SpectralMeasure& m) { return m.eigenvalues(); })
      .def_property_readonly(
          "eigenvectors",
          [](const slx::SpectralMeasure& m) { return m.eigenvectors(); })
      .def_property_readonly(
          "essential_edge",
          [](const slx::SpectralMeasure& m) { return m.essential_edge(); })
      .def("counting",
           [](const slx::SpectralMeasure& m, double t) {
             return slx::counting_function(m, t);
           },
           py::arg("t"), "Number of eigenvalues strictly below t.")
      .def("matrix", &slx::SpectralMeasure::matrix)
      .def("edges", [](const slx::SpectralMeasure& m) {
        const auto e = slx::spectrum_edges(m);
        return py::make_tuple(e.t0, e.t1);
      });

  mod.def("branch_sqrt", &slx::branch_sqrt, py::arg("w"),
          "Square root with cut [0, inf), image in the closed upper "
          "half-plane, limits from above on the cut.");

  mod.def(
      "weyl",
      [](const slx::SpectralMeasure& m, Complex z) {
        if (z.imag() == 0.0)
          return slx::boundary_value(m, slx::RealizationKind::Dirichlet,
                                     z.real());
        return slx::weyl_base(m, z);
      },
      py::arg("m"), py::arg("z"),
      "M(z) = i sqrt(z - T); real z evaluates the boundary limit M(t+i0).");

  mod.def(
      "boundary_value",
      [](const slx::SpectralMeasure& m, const std::string& kind, double t) {
        return slx::boundary_value(m, kind_of(kind), t);
      },
      py::arg("m"), py::arg("kind"), py::arg("t"));

  mod.def(
      "weyl_of_extension",
      [](const slx::SpectralMeasure& m, const Matrix& b, Complex z,
         const std::string& triplet) {
        return slx::weyl_of_extension(m, to_param(b, triplet), z).value;
      },
      py::arg("m"), py::arg("b"), py::arg("z"), py::arg("triplet") = "base",
      "(B - M(z))^{-1} with B Hermitian in the tagged triplet coordinates.");

  mod.def(
      "regularize_at_i",
      [](const slx::SpectralMeasure& m) {
        const auto tt = slx::regularize(slx::weyl_base(m, Complex(0.0, 1.0)));
        return py::make_tuple(tt.r, tt.q);
      },
      py::arg("m"),
      "Returns (R, Q) with Q = Re M(i), R = (Im M(i))^{1/2}; the transform "
      "M~ = R^{-1}(M - Q)R^{-1} satisfies M~(i) = iI.");

  mod.def(
      "transform_weyl",
      [](const Matrix& r, const Matrix& q, const Matrix& value) {
        return slx::transform_weyl(slx::TripletTransform{r, q}, value);
      },
      py::arg("r"), py::arg("q"), py::arg("value"));

  mod.def(
      "transform_parameter",
      [](const Matrix& r, const Matrix& q, const Matrix& b) {
        return slx::transform_parameter(slx::TripletTransform{r, q}, b);
      },
      py::arg("r"), py::arg("q"), py::arg("b"));

  mod.def(
      "canonical_parameter",
      [](const slx::SpectralMeasure& m, const std::string& kind,
         const std::string& triplet) -> std::optional<Matrix> {
        const auto p =
            slx::canonical_parameter(m, kind_of(kind), tag_of(triplet));
        if (p.is_dirichlet) return std::nullopt;
        return p.b;
      },
      py::arg("m"), py::arg("kind"), py::arg("triplet") = "base",
      "Boundary matrix of the named canonical realization (None for "
      "the Dirichlet relation).");

  mod.def(
      "direct_sum_weyl",
      [](const std::vector<slx::SpectralMeasure>& blocks, Complex z) {
        return slx::direct_sum_weyl(slx::BlockModel::canonical(blocks), z);
      },
      py::arg("blocks"), py::arg("z"),
      "Block-diagonal direct sum of the per-block regularized Weyl "
      "functions.");

  mod.def(
      "multiplicity_table",
      [](const slx::SpectralMeasure& m, const std::vector<double>& t_grid,
         const std::optional<Matrix>& b, const std::string& triplet,
         double rank_tol) {
        const auto table = slx::multiplicity_table(m, to_param(b, triplet),
                                                   t_grid, rank_tol);
        py::dict out;
        out["kind"] = slx::realization_name(table.kind);
        out["rank_tol"] = table.rank_tol;
        out["t"] = table.t;
        out["rank"] = table.rank;
        out["exceptional"] = std::vector<bool>(table.exceptional.begin(),
                                               table.exceptional.end());
        return out;
      },
      py::arg("m"), py::arg("t_grid"), py::arg("b") = py::none(),
      py::arg("triplet") = "base", py::arg("rank_tol") = 1e-8,
      "Pointwise rank of Im M_B(t + i0) over the grid; b = None tabulates "
      "the Dirichlet realization.");

  mod.def(
      "ac_band",
      [](const slx::SpectralMeasure& m) { return slx::ac_band(m).t0; },
      py::arg("m"), "Lower edge of the common ac band [t0, inf).");

  mod.def("ac_closure", &slx::ac_closure, py::arg("intervals"),
          "Merged union of half-open intervals [a, b).");

  mod.def(
      "invariant_max_normal",
      [](const slx::SpectralMeasure& m, double t, int y_count, double y_min) {
        const auto est = slx::invariant_max_normal(m, t, y_count, y_min);
        return py::make_tuple(est.value, est.bound);
      },
      py::arg("m"), py::arg("t"), py::arg("y_count") = 64,
      py::arg("y_min") = 1e-6,
      "Invariant maximal-normal-function estimate and its a-priori bound.");

  mod.def(
      "dirichlet_resolvent",
      [](const slx::SpectralMeasure& m, Complex z, const Matrix& f, double h) {
        return slx::dirichlet_resolvent_apply(m, z, to_grid_function(f, h))
            .values();
      },
      py::arg("m"), py::arg("z"), py::arg("f"), py::arg("h"),
      "(A_D - z)^{-1} f for samples f of shape (n+1, dim) on step h.");

  mod.def(
      "krein_resolvent",
      [](const slx::SpectralMeasure& m, const Matrix& b, Complex z,
         const Matrix& f, double h, const std::string& triplet) {
        return slx::krein_resolvent_apply(m, to_param(b, triplet), z,
                                          to_grid_function(f, h))
            .values();
      },
      py::arg("m"), py::arg("b"), py::arg("z"), py::arg("f"), py::arg("h"),
      py::arg("triplet") = "base",
      "(A_B - z)^{-1} f via the resolvent difference formula.");

  mod.def(
      "krein_kernel",
      [](const slx::SpectralMeasure& m, double h, double length) {
        const auto basis =
            slx::krein_kernel_basis(m, slx::Grid::with_length(h, length));
        std::vector<Matrix> out;
        out.reserve(basis.size());
        for (const auto& g : basis) out.push_back(g.values());
        return out;
      },
      py::arg("m"), py::arg("h"), py::arg("length"),
      "Sampled kernel basis x -> exp(-x sqrt(t_j)) v_j of the Krein "
      "realization.");

  mod.def(
      "fd_halfline_spectrum",
      [](const slx::SpectralMeasure& m, const std::optional<Matrix>& b,
         double h, double length, int k, const std::string& triplet) {
        const auto d =
            slx::discretize_halfline(m, to_param(b, triplet), h, length);
        return slx::spectrum(d, k);
      },
      py::arg("m"), py::arg("b"), py::arg("h"), py::arg("length"),
      py::arg("k"), py::arg("triplet") = "base",
      "k lowest eigenvalues of the independent FD half-line model "
      "(b = None for Dirichlet).");

  mod.def(
      "fd_interval_spectrum",
      [](const slx::SpectralMeasure& m, const std::string& bc, int cells,
         int k, double length) {
        return slx::spectrum(slx::discretize_interval(m, bc_of(bc), cells,
                                                      length),
                             k);
      },
      py::arg("m"), py::arg("bc"), py::arg("cells"), py::arg("k"),
      py::arg("length") = M_PI);

  mod.def(
      "interval_formula",
      [](const slx::SpectralMeasure& m, const std::string& bc, int count,
         double length) {
        return slx::interval_spectrum_formula(m, bc_of(bc), count, length);
      },
      py::arg("m"), py::arg("bc"), py::arg("count"),
      py::arg("length") = M_PI,
      "Separated interval eigenvalues {(k pi / length)^2 + t_j}.");

  mod.def(
      "energy_identity",
      [](const slx::SpectralMeasure& m, const Matrix& f, double h) {
        const auto rep = slx::energy_identity_check(m, to_grid_function(f, h));
        return py::make_tuple(rep.lhs, rep.rhs, rep.residual);
      },
      py::arg("m"), py::arg("f"), py::arg("h"),
      "Quadrature check of ||(-d^2 + T) f||^2 = ||f''||^2 + ||T f||^2 "
      "+ 2 ||sqrt(T) f'||^2.");

  mod.def(
      "kato_check",
      [](const std::vector<double>& q, double box_length, double window,
         double threshold) {
        const auto rep =
            slx::kato_condition_check(q, box_length, window, threshold);
        py::dict out;
        out["center"] = rep.center;
        out["profile"] = rep.profile;
        out["threshold"] = rep.threshold;
        out["consistent"] = rep.consistent;
        return out;
      },
      py::arg("q"), py::arg("box_length"), py::arg("window") = 1.0,
      py::arg("threshold") = 1e-2,
      "Moving-window integral profile of a sampled 1d potential.");

  mod.def(
      "run_acceptance",
      [](std::uint64_t seed) {
        const auto checks = slx::run_acceptance_checks(seed);
        py::list out;
        for (const auto& c : checks) {
          py::dict row;
          row["id"] = c.id;
          row["name"] = c.name;
          row["passed"] = c.passed;
          row["detail"] = c.detail;
          out.append(row);
        }
        return out;
      },
      py::arg("seed") = 20260817ULL,
      "Full verification gate; deterministic for a fixed seed.");
}
