// Batch front-end: parse a JSON run configuration, dispatch to the library,
// emit CSV or JSON artifacts. Outputs are byte-identical across reruns with
// the same configuration and seed: keys are emitted sorted, doubles through
// a fixed format, and nothing time- or host-dependent is written.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "slx/linalg.hpp"
#include "slx/multiplicity.hpp"
#include "slx/oracle_fd.hpp"
#include "slx/realizations.hpp"
#include "slx/triplets.hpp"
#include "slx/verify.hpp"
#include "slx/weyl.hpp"

using nlohmann::json;
using slx::Complex;
using slx::Matrix;
using slx::Vector;

namespace {

struct Options {
  std::string config_path;
  std::string out_path;
  std::string format;  // "", "csv" or "json"
  std::uint64_t seed = 20260817ULL;
  double rank_tol = -1.0;  // <= 0 means "from config or default"
  int grid_n = -1;
};

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return 0;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) slx::fail(slx::ErrorCode::ConfigParse,
                      "cannot open output path " + out_path);
  out << text;
  return 0;
}

json load_config(const Options& opts) {
  if (opts.config_path.empty())
    slx::fail(slx::ErrorCode::ConfigParse, "--config is required");
  std::ifstream in(opts.config_path);
  if (!in) slx::fail(slx::ErrorCode::ConfigParse,
                     "cannot read config " + opts.config_path);
  json cfg;
  try {
    in >> cfg;
  } catch (const json::exception& e) {
    slx::fail(slx::ErrorCode::ConfigParse,
              std::string("config is not valid JSON: ") + e.what());
  }
  if (!cfg.is_object())
    slx::fail(slx::ErrorCode::ConfigParse, "config root must be an object");
  return cfg;
}

// Complex numbers are [re, im] pairs throughout.
Complex parse_complex(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    slx::fail(slx::ErrorCode::ConfigParse,
              "complex values must be [re, im] pairs");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

json dump_complex(Complex z) { return json::array({z.real(), z.imag()}); }

// Matrices are {"dim": n, "entries": [...]} with n*n row-major [re, im]
// pairs (plain numbers are accepted for real entries).
Matrix parse_matrix(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("entries"))
    slx::fail(slx::ErrorCode::ConfigParse,
              "matrix spec needs \"dim\" and row-major \"entries\"");
  const int n = j["dim"].get<int>();
  const json& e = j["entries"];
  if (n <= 0 || !e.is_array() || e.size() != static_cast<size_t>(n) * n)
    slx::fail(slx::ErrorCode::ConfigParse, "matrix entries must have dim^2 items");
  Matrix m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      const json& item = e[static_cast<size_t>(r) * n + c];
      m(r, c) = item.is_number() ? Complex(item.get<double>(), 0.0)
                                 : parse_complex(item);
    }
  return m;
}

json dump_matrix(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back(dump_complex(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

slx::SpectralMeasure parse_potential(const json& cfg) {
  if (!cfg.contains("potential") || !cfg["potential"].is_object())
    slx::fail(slx::ErrorCode::ConfigParse, "config needs a \"potential\" object");
  const json& p = cfg["potential"];
  std::optional<double> edge;
  if (p.contains("essential_edge")) edge = p["essential_edge"].get<double>();
  if (p.contains("diagonal")) {
    std::vector<double> d = p["diagonal"].get<std::vector<double>>();
    if (d.empty())
      slx::fail(slx::ErrorCode::ConfigParse, "diagonal potential is empty");
    return slx::SpectralMeasure::from_eigenvalues(d, edge);
  }
  if (p.contains("matrix"))
    return slx::spectral_measure_from_matrix(parse_matrix(p["matrix"]), edge);
  if (p.contains("schrodinger1d")) {
    const json& s = p["schrodinger1d"];
    if (!s.contains("q") || !s.contains("length"))
      slx::fail(slx::ErrorCode::ConfigParse,
                "schrodinger1d needs \"q\" samples and \"length\"");
    return slx::spectral_measure_from_schrodinger_1d(
        s["q"].get<std::vector<double>>(), s["length"].get<double>());
  }
  slx::fail(slx::ErrorCode::ConfigParse,
            "potential must be diagonal, matrix or schrodinger1d");
}

struct RealizationSpec {
  bool canonical = true;
  slx::RealizationKind kind = slx::RealizationKind::Dirichlet;
  Matrix b;
  slx::TripletTag triplet = slx::TripletTag::Base;

  slx::ExtensionParameter resolve(const slx::SpectralMeasure& m) const {
    if (canonical) return slx::canonical_parameter(m, kind);
    if (b.rows() != m.dim())
      slx::fail(slx::ErrorCode::ConfigParse,
                "realization parameter dimension does not match the potential");
    return slx::ExtensionParameter::robin(b, triplet);
  }

  const char* name() const {
    return canonical ? slx::realization_name(kind) : "robin";
  }
};

RealizationSpec parse_realization(const json& cfg) {
  RealizationSpec spec;
  if (!cfg.contains("realization")) return spec;  // Dirichlet by default
  const json& r = cfg["realization"];
  if (!r.is_object())
    slx::fail(slx::ErrorCode::ConfigParse, "realization must be an object");
  if (r.contains("kind")) {
    const std::string kind = r["kind"].get<std::string>();
    if (kind == "dirichlet") spec.kind = slx::RealizationKind::Dirichlet;
    else if (kind == "neumann") spec.kind = slx::RealizationKind::Neumann;
    else if (kind == "krein") spec.kind = slx::RealizationKind::Krein;
    else
      slx::fail(slx::ErrorCode::ConfigParse,
                "realization kind must be dirichlet, neumann or krein");
    return spec;
  }
  if (!r.contains("b"))
    slx::fail(slx::ErrorCode::ConfigParse,
              "realization needs a \"kind\" or a \"b\" matrix");
  spec.canonical = false;
  spec.b = parse_matrix(r["b"]);
  if (r.contains("triplet")) {
    const std::string tag = r["triplet"].get<std::string>();
    if (tag == "base") spec.triplet = slx::TripletTag::Base;
    else if (tag == "regularized") spec.triplet = slx::TripletTag::Regularized;
    else
      slx::fail(slx::ErrorCode::ConfigParse,
                "triplet must be base or regularized");
  }
  return spec;
}

std::vector<double> parse_t_grid(const json& cfg, int grid_n) {
  if (!cfg.contains("t_grid"))
    slx::fail(slx::ErrorCode::ConfigParse, "config needs a \"t_grid\"");
  const json& g = cfg["t_grid"];
  if (g.is_object() && g.contains("points"))
    return g["points"].get<std::vector<double>>();
  if (!g.is_object() || !g.contains("min") || !g.contains("max"))
    slx::fail(slx::ErrorCode::ConfigParse,
              "t_grid needs min/max/count or explicit points");
  const double lo = g["min"].get<double>();
  const double hi = g["max"].get<double>();
  int count = g.contains("count") ? g["count"].get<int>() : 200;
  if (grid_n > 0) count = grid_n;
  if (!(hi > lo) || count < 2)
    slx::fail(slx::ErrorCode::ConfigParse, "t_grid needs max > min, count >= 2");
  std::vector<double> out(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i)
    out[static_cast<size_t>(i)] = lo + (hi - lo) * i / (count - 1);
  return out;
}

std::vector<Complex> parse_z_list(const json& cfg) {
  if (!cfg.contains("z_list") || !cfg["z_list"].is_array() ||
      cfg["z_list"].empty())
    slx::fail(slx::ErrorCode::ConfigParse,
              "config needs a non-empty \"z_list\" of [re, im] pairs");
  std::vector<Complex> out;
  for (const json& item : cfg["z_list"]) out.push_back(parse_complex(item));
  return out;
}

slx::Grid parse_x_grid(const json& cfg) {
  if (!cfg.contains("x_grid") || !cfg["x_grid"].is_object())
    slx::fail(slx::ErrorCode::ConfigParse,
              "config needs an \"x_grid\" with h and length");
  const json& g = cfg["x_grid"];
  if (!g.contains("h") || !g.contains("length"))
    slx::fail(slx::ErrorCode::ConfigParse, "x_grid needs \"h\" and \"length\"");
  return slx::Grid::with_length(g["h"].get<double>(),
                                g["length"].get<double>());
}

// Tolerances live under "tolerances" or (shorthand) at the top level.
double tol_from(const json& cfg, const char* key, double fallback) {
  const json* src = nullptr;
  if (cfg.contains("tolerances") && cfg["tolerances"].is_object() &&
      cfg["tolerances"].contains(key))
    src = &cfg["tolerances"][key];
  else if (cfg.contains(key))
    src = &cfg[key];
  if (src == nullptr) return fallback;
  const double v = src->get<double>();
  if (!(v > 0.0))
    slx::fail(slx::ErrorCode::ConfigParse,
              std::string(key) + " must be positive");
  return v;
}

std::string chosen_format(const Options& opts, const json& cfg,
                          const char* fallback) {
  std::string fmt = fallback;
  if (cfg.contains("output") && cfg["output"].is_object() &&
      cfg["output"].contains("format"))
    fmt = cfg["output"]["format"].get<std::string>();
  if (!opts.format.empty()) fmt = opts.format;
  if (fmt != "csv" && fmt != "json")
    slx::fail(slx::ErrorCode::ConfigParse, "format must be csv or json");
  return fmt;
}

std::string chosen_out(const Options& opts, const json& cfg) {
  std::string path = opts.out_path;
  if (path.empty() && cfg.contains("output") && cfg["output"].is_object() &&
      cfg["output"].contains("path"))
    path = cfg["output"]["path"].get<std::string>();
  return path;
}

// ---------------------------------------------------------------- commands

int cmd_weyl_eval(const Options& opts) {
  const json cfg = load_config(opts);
  const slx::SpectralMeasure m = parse_potential(cfg);
  const RealizationSpec spec = parse_realization(cfg);
  const std::vector<Complex> zs = parse_z_list(cfg);
  const std::string fmt = chosen_format(opts, cfg, "json");

  std::vector<std::pair<Complex, Matrix>> values;
  for (const Complex z : zs) {
    Matrix v;
    if (spec.canonical && spec.kind == slx::RealizationKind::Dirichlet)
      v = (z.imag() == 0.0)
              ? slx::boundary_value(m, slx::RealizationKind::Dirichlet,
                                    z.real())
              : slx::weyl_base(m, z);
    else
      v = slx::weyl_of_extension(m, spec.resolve(m), z).value;
    values.emplace_back(z, v);
  }

  std::string text;
  if (fmt == "json") {
    json out;
    out["command"] = "weyl-eval";
    out["realization"] = spec.name();
    out["triplet"] = slx::triplet_name(spec.triplet);
    json rows = json::array();
    for (const auto& [z, v] : values)
      rows.push_back(json{{"z", dump_complex(z)}, {"m", dump_matrix(v)}});
    out["values"] = rows;
    text = out.dump(2) + "\n";
  } else {
    std::string csv = "z_re,z_im,row,col,re,im\n";
    for (const auto& [z, v] : values)
      for (Eigen::Index r = 0; r < v.rows(); ++r)
        for (Eigen::Index c = 0; c < v.cols(); ++c)
          csv += num(z.real()) + "," + num(z.imag()) + "," +
                 std::to_string(r) + "," + std::to_string(c) + "," +
                 num(v(r, c).real()) + "," + num(v(r, c).imag()) + "\n";
    text = csv;
  }
  return write_output(text, chosen_out(opts, cfg));
}

int cmd_multiplicity(const Options& opts) {
  const json cfg = load_config(opts);
  const slx::SpectralMeasure m = parse_potential(cfg);
  const RealizationSpec spec = parse_realization(cfg);
  const std::vector<double> grid = parse_t_grid(cfg, opts.grid_n);
  const double rank_tol =
      opts.rank_tol > 0.0 ? opts.rank_tol : tol_from(cfg, "rank_tol", 1e-8);
  const std::string fmt = chosen_format(opts, cfg, "csv");

  const slx::MultiplicityTable table =
      slx::multiplicity_table(m, spec.resolve(m), grid, rank_tol);

  std::string text;
  if (fmt == "csv") {
    std::string csv = "t,rank,exceptional,realization,rank_tol\n";
    for (size_t i = 0; i < table.t.size(); ++i)
      csv += num(table.t[i]) + "," + std::to_string(table.rank[i]) + "," +
             (table.exceptional[i] ? "1" : "0") + "," + spec.name() + "," +
             num(rank_tol) + "\n";
    text = csv;
  } else {
    json out;
    out["command"] = "multiplicity";
    out["realization"] = spec.name();
    out["triplet"] = slx::triplet_name(spec.triplet);
    out["rank_tol"] = rank_tol;
    json rows = json::array();
    for (size_t i = 0; i < table.t.size(); ++i)
      rows.push_back(json{{"t", table.t[i]},
                          {"rank", table.rank[i]},
                          {"exceptional", bool(table.exceptional[i])}});
    out["rows"] = rows;
    text = out.dump(2) + "\n";
  }
  return write_output(text, chosen_out(opts, cfg));
}

int cmd_spectrum_interval(const Options& opts) {
  const json cfg = load_config(opts);
  const slx::SpectralMeasure m = parse_potential(cfg);
  if (!cfg.contains("interval") || !cfg["interval"].is_object())
    slx::fail(slx::ErrorCode::ConfigParse,
              "config needs an \"interval\" object with bc/cells/count");
  const json& iv = cfg["interval"];
  const std::string bc_name =
      iv.contains("bc") ? iv["bc"].get<std::string>() : "dd";
  slx::IntervalBc bc;
  if (bc_name == "dd") bc = slx::IntervalBc::DD;
  else if (bc_name == "nn") bc = slx::IntervalBc::NN;
  else slx::fail(slx::ErrorCode::ConfigParse, "interval bc must be dd or nn");
  const int cells = iv.contains("cells") ? iv["cells"].get<int>() : 400;
  const int count = iv.contains("count") ? iv["count"].get<int>() : 20;
  const double tol = tol_from(cfg, "interval_tol", 1e-2);
  const std::string fmt = chosen_format(opts, cfg, "json");

  const slx::DiscretizedOperator d = slx::discretize_interval(m, bc, cells);
  const slx::RealVector got = slx::spectrum(d, count);
  const std::vector<double> want = slx::interval_spectrum_formula(m, bc, count);

  double max_rel = 0.0;
  for (int i = 0; i < count; ++i)
    max_rel =
        std::max(max_rel, std::abs(got(i) - want[static_cast<size_t>(i)]) /
                              std::max(1.0, want[static_cast<size_t>(i)]));
  const bool pass = max_rel <= tol;
  const double h = d.grid().h;

  std::string text;
  if (fmt == "json") {
    json out;
    out["command"] = "spectrum-interval";
    out["bc"] = bc_name;
    out["cells"] = cells;
    out["h2_scale"] = h * h;
    out["max_rel_error"] = max_rel;
    out["pass"] = pass;
    out["tol"] = tol;
    json rows = json::array();
    for (int i = 0; i < count; ++i)
      rows.push_back(json{
          {"index", i},
          {"formula", want[static_cast<size_t>(i)]},
          {"oracle", got(i)},
          {"error", got(i) - want[static_cast<size_t>(i)]}});
    out["rows"] = rows;
    text = out.dump(2) + "\n";
  } else {
    std::string csv = "index,formula,oracle,error\n";
    for (int i = 0; i < count; ++i)
      csv += std::to_string(i) + "," + num(want[static_cast<size_t>(i)]) +
             "," + num(got(i)) + "," +
             num(got(i) - want[static_cast<size_t>(i)]) + "\n";
    text = csv;
  }
  const int rc = write_output(text, chosen_out(opts, cfg));
  return rc != 0 ? rc : (pass ? 0 : 3);
}

int cmd_resolvent_check(const Options& opts) {
  const json cfg = load_config(opts);
  const slx::SpectralMeasure m = parse_potential(cfg);
  const RealizationSpec spec = parse_realization(cfg);
  const std::vector<Complex> zs = parse_z_list(cfg);
  const slx::Grid grid = parse_x_grid(cfg);
  const double tol = tol_from(cfg, "resolvent_tol", 1e-3);
  const std::string fmt = chosen_format(opts, cfg, "json");

  slx::ExtensionParameter p = spec.resolve(m);
  // The oracle wants a base-triplet matrix condition; pull regularized
  // parameters back through the inverse canonical transform.
  if (!p.is_dirichlet && p.triplet == slx::TripletTag::Regularized) {
    const auto tt =
        slx::regularize(slx::weyl_base(m, Complex(0.0, 1.0)));
    p = slx::ExtensionParameter::robin(
        slx::transform_parameter(tt.inverse(), p.b));
  }
  // Fixed smooth probe with equal channel weights.
  Matrix vals(grid.n + 1, m.dim());
  const double wj = 1.0 / std::sqrt(static_cast<double>(m.dim()));
  for (int k = 0; k <= grid.n; ++k) {
    const double x = grid.node(k);
    for (int j = 0; j < m.dim(); ++j)
      vals(k, j) = Complex(x * x * std::exp(-x) * wj, 0.0);
  }
  const slx::GridFunction f(grid, vals);
  const slx::DiscretizedOperator d =
      slx::discretize_halfline(m, p, grid.h, grid.length());

  bool pass = true;
  std::vector<std::pair<Complex, double>> rows;
  for (const Complex z : zs) {
    const slx::GridFunction ga = slx::krein_resolvent_apply(m, p, z, f);
    const slx::GridFunction go = slx::oracle_resolvent_apply(d, z, f);
    const slx::GridFunction diff(grid, ga.values() - go.values());
    const double rel = diff.norm() / go.norm();
    rows.emplace_back(z, rel);
    if (!(rel <= tol)) pass = false;
  }

  std::string text;
  if (fmt == "json") {
    json out;
    out["command"] = "resolvent-check";
    out["realization"] = spec.name();
    out["grid"] = json{{"h", grid.h}, {"length", grid.length()}};
    out["pass"] = pass;
    out["tol"] = tol;
    json jrows = json::array();
    for (const auto& [z, rel] : rows)
      jrows.push_back(json{{"z", dump_complex(z)},
                           {"rel_l2_error", rel},
                           {"pass", rel <= tol}});
    out["rows"] = jrows;
    text = out.dump(2) + "\n";
  } else {
    std::string csv = "z_re,z_im,rel_l2_error,pass\n";
    for (const auto& [z, rel] : rows)
      csv += num(z.real()) + "," + num(z.imag()) + "," + num(rel) + "," +
             (rel <= tol ? "1" : "0") + "\n";
    text = csv;
  }
  const int rc = write_output(text, chosen_out(opts, cfg));
  return rc != 0 ? rc : (pass ? 0 : 3);
}

int cmd_triplet_sum(const Options& opts) {
  const json cfg = load_config(opts);
  if (!cfg.contains("blocks") || !cfg["blocks"].is_array() ||
      cfg["blocks"].empty())
    slx::fail(slx::ErrorCode::ConfigParse,
              "config needs a non-empty \"blocks\" array of potentials");
  std::vector<slx::SpectralMeasure> blocks;
  for (const json& b : cfg["blocks"])
    blocks.push_back(parse_potential(json{{"potential", b}}));
  const double tol = tol_from(cfg, "herglotz_tol", 1e-10);
  const std::string fmt = chosen_format(opts, cfg, "json");

  const slx::BlockModel bm = slx::BlockModel::canonical(blocks);
  const Complex zi(0.0, 1.0);
  const Matrix at_i = slx::direct_sum_weyl(bm, zi);
  const double dev = slx::op_norm(
      at_i - zi * Matrix::Identity(bm.total_dim(), bm.total_dim()));
  const bool pass = dev <= tol;

  json values = json::array();
  if (cfg.contains("z_list"))
    for (const Complex z : parse_z_list(cfg))
      values.push_back(json{{"z", dump_complex(z)},
                            {"m", dump_matrix(slx::direct_sum_weyl(bm, z))}});

  std::string text;
  if (fmt == "json") {
    json out;
    out["command"] = "triplet-sum";
    out["blocks"] = blocks.size();
    out["total_dim"] = bm.total_dim();
    out["deviation_at_i"] = dev;
    out["pass"] = pass;
    out["tol"] = tol;
    if (!values.empty()) out["values"] = values;
    text = out.dump(2) + "\n";
  } else {
    std::string csv = "key,value\n";
    csv += "blocks," + std::to_string(blocks.size()) + "\n";
    csv += "total_dim," + std::to_string(bm.total_dim()) + "\n";
    csv += "deviation_at_i," + num(dev) + "\n";
    csv += std::string("pass,") + (pass ? "1" : "0") + "\n";
    text = csv;
  }
  const int rc = write_output(text, chosen_out(opts, cfg));
  return rc != 0 ? rc : (pass ? 0 : 3);
}

int cmd_schrodinger_demo(const Options& opts) {
  const json cfg = load_config(opts);
  if (!cfg.contains("potential") || !cfg["potential"].is_object() ||
      !cfg["potential"].contains("schrodinger1d"))
    slx::fail(slx::ErrorCode::ConfigParse,
              "schrodinger-demo needs a schrodinger1d potential");
  const json& s = cfg["potential"]["schrodinger1d"];
  const std::vector<double> q = s["q"].get<std::vector<double>>();
  const double length = s["length"].get<double>();
  const slx::SpectralMeasure m = parse_potential(cfg);
  const std::string fmt = chosen_format(opts, cfg, "json");

  const slx::SpectrumEdges edges = slx::spectrum_edges(m);
  const slx::KatoReport kato = slx::kato_condition_check(q, length);
  const int report_n = std::min(8, m.dim());

  std::string text;
  if (fmt == "json") {
    json out;
    out["command"] = "schrodinger-demo";
    out["samples"] = q.size();
    out["edges"] = json{{"t0", edges.t0},
                        {"t1", std::isfinite(edges.t1)
                                   ? json(edges.t1)
                                   : json("inf")}};
    json evs = json::array();
    for (int j = 0; j < report_n; ++j) evs.push_back(m.eigenvalues()[j]);
    out["lowest_transverse"] = evs;
    out["kato"] = json{{"consistent", kato.consistent},
                       {"edge_profile",
                        kato.profile.empty() ? 0.0 : kato.profile.back()},
                       {"threshold", kato.threshold}};
    out["pass"] = kato.consistent;
    text = out.dump(2) + "\n";
  } else {
    std::string csv = "key,value\n";
    csv += "samples," + std::to_string(q.size()) + "\n";
    csv += "t0," + num(edges.t0) + "\n";
    for (int j = 0; j < report_n; ++j)
      csv += "transverse_" + std::to_string(j) + "," +
             num(m.eigenvalues()[j]) + "\n";
    csv += std::string("kato_consistent,") + (kato.consistent ? "1" : "0") +
           "\n";
    text = csv;
  }
  const int rc = write_output(text, chosen_out(opts, cfg));
  return rc != 0 ? rc : (kato.consistent ? 0 : 3);
}

int cmd_verify_all(const Options& opts) {
  const std::vector<slx::CheckResult> checks =
      slx::run_acceptance_checks(opts.seed);
  int failed = 0;
  for (const auto& c : checks) {
    std::printf("[%s] %2d %s: %s\n", c.passed ? "PASS" : "FAIL", c.id,
                c.name.c_str(), c.detail.c_str());
    if (!c.passed) ++failed;
  }
  std::printf("%d/%d checks passed (seed %llu)\n",
              static_cast<int>(checks.size()) - failed,
              static_cast<int>(checks.size()),
              static_cast<unsigned long long>(opts.seed));

  if (!opts.out_path.empty()) {
    const std::string fmt =
        opts.format.empty() ? std::string("json") : opts.format;
    std::string text;
    if (fmt == "json") {
      json out;
      out["command"] = "verify-all";
      out["seed"] = opts.seed;
      out["failed"] = failed;
      json rows = json::array();
      for (const auto& c : checks)
        rows.push_back(json{{"id", c.id},
                            {"name", c.name},
                            {"passed", c.passed},
                            {"detail", c.detail}});
      out["checks"] = rows;
      text = out.dump(2) + "\n";
    } else if (fmt == "csv") {
      text = "id,name,passed\n";
      for (const auto& c : checks)
        text += std::to_string(c.id) + ",\"" + c.name + "\"," +
                (c.passed ? "1" : "0") + "\n";
    } else {
      slx::fail(slx::ErrorCode::ConfigParse, "format must be csv or json");
    }
    write_output(text, opts.out_path);
  }
  return failed == 0 ? 0 : 3;
}

int map_exit(slx::ErrorCode code) {
  switch (code) {
    case slx::ErrorCode::SolverFailure:
    case slx::ErrorCode::ShiftOnSpectrum:
    case slx::ErrorCode::SingularPencil:
      return 4;
    default:
      return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "slx: extension theory of half-line Sturm-Liouville operators "
      "-d^2/dt^2 + T with matrix potential"};
  app.fallthrough();
  Options opts;
  app.add_option("--config", opts.config_path, "JSON run configuration");
  app.add_option("--out", opts.out_path, "output path (default stdout)");
  app.add_option("--format", opts.format, "output format: csv or json");
  app.add_option("--seed", opts.seed, "seed for randomized suites");
  app.add_option("--rank-tol", opts.rank_tol,
                 "rank cutoff for multiplicity tables");
  app.add_option("--grid-n", opts.grid_n, "override t_grid point count");

  auto* weyl_eval = app.add_subcommand(
      "weyl-eval", "evaluate the Weyl function of a realization on z_list");
  auto* multiplicity = app.add_subcommand(
      "multiplicity", "tabulate rank Im M_B(t+i0) over the t grid");
  auto* spectrum_interval = app.add_subcommand(
      "spectrum-interval",
      "compare interval FD spectra with separation of variables");
  auto* resolvent_check = app.add_subcommand(
      "resolvent-check", "compare the resolvent formula with the FD oracle");
  auto* triplet_sum = app.add_subcommand(
      "triplet-sum", "direct sum of regularized blocks, normalization at i");
  auto* schrodinger_demo = app.add_subcommand(
      "schrodinger-demo",
      "half-line model from a 1d Schrodinger cross-section");
  auto* verify_all =
      app.add_subcommand("verify-all", "run the full verification suite");
  app.require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (weyl_eval->parsed()) return cmd_weyl_eval(opts);
    if (multiplicity->parsed()) return cmd_multiplicity(opts);
    if (spectrum_interval->parsed()) return cmd_spectrum_interval(opts);
    if (resolvent_check->parsed()) return cmd_resolvent_check(opts);
    if (triplet_sum->parsed()) return cmd_triplet_sum(opts);
    if (schrodinger_demo->parsed()) return cmd_schrodinger_demo(opts);
    if (verify_all->parsed()) return cmd_verify_all(opts);
  } catch (const slx::Error& e) {
    json err;
    err["error"] =
        json{{"code", slx::error_code_name(e.code())}, {"message", e.what()}};
    std::fprintf(stderr, "%s\n", err.dump().c_str());
    return map_exit(e.code());
  } catch (const json::exception& e) {
    std::fprintf(stderr, "{\"error\":{\"code\":\"ConfigParse\",\"message\":\"%s\"}}\n",
                 e.what());
    return 2;
  }
  return 0;
}
