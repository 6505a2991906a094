// End-to-end checks of the command-line front-end. The binary path arrives
// through the SLX_BIN environment variable; outputs go to a scratch area
// under the system temp directory.

#include <doctest.h>
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

using nlohmann::json;

namespace {

std::filesystem::path scratch_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "slx_cli_tests";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string write_file(const std::string& name, const std::string& content) {
  const auto path = scratch_dir() / name;
  std::ofstream out(path, std::ios::binary);
  out << content;
  return path.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args) {
  const char* bin = std::getenv("SLX_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "SLX_BIN must point at the CLI binary");
  const std::string cmd = std::string(bin) + " " + args + " 2> /dev/null";
  const int rc = std::system(cmd.c_str());
  REQUIRE(rc != -1);
  return WEXITSTATUS(rc);
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("multiplicity emits the counting function as csv") {
  const std::string cfg = write_file("mult.json", R"({
    "potential": {"diagonal": [1.0, 4.0]},
    "realization": {"kind": "dirichlet"},
    "t_grid": {"min": 0.0, "max": 10.0, "count": 200}
  })");
  const std::string out1 = (scratch_dir() / "mult1.csv").string();
  const std::string out2 = (scratch_dir() / "mult2.csv").string();

  CHECK(run_cli("multiplicity --config " + cfg + " --format csv --out " +
                out1) == 0);
  CHECK(run_cli("multiplicity --config " + cfg + " --format csv --out " +
                out2) == 0);
  const std::string text = slurp(out1);
  CHECK(text == slurp(out2));  // byte-identical reruns

  std::istringstream lines(text);
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(line == "t,rank,exceptional,realization,rank_tol");
  int rows = 0;
  while (std::getline(lines, line)) {
    double t = 0.0, tol = 0.0;
    int rank = -1, exceptional = -1;
    char name[32] = {0};
    REQUIRE(std::sscanf(line.c_str(), "%lf,%d,%d,%31[^,],%lf", &t, &rank,
                        &exceptional, name, &tol) == 5);
    CHECK(std::string(name) == "dirichlet");
    CHECK(tol == 1e-8);
    if (!exceptional) {
      const int counting = (t > 1.0 ? 1 : 0) + (t > 4.0 ? 1 : 0);
      CHECK(rank == counting);
    }
    ++rows;
  }
  CHECK(rows == 200);
}

TEST_CASE("triplet-sum reports the normalization at i") {
  const std::string cfg = write_file("sum.json", R"({
    "blocks": [{"diagonal": [0.2]}, {"diagonal": [1.5]}]
  })");
  const std::string out = (scratch_dir() / "sum.json.out").string();
  CHECK(run_cli("triplet-sum --config " + cfg + " --out " + out) == 0);
  const json rep = json::parse(slurp(out));
  CHECK(rep["command"] == "triplet-sum");
  CHECK(rep["total_dim"] == 2);
  CHECK(rep["deviation_at_i"].get<double>() <= 1e-10);
  CHECK(rep["pass"] == true);
}

TEST_CASE("spectrum-interval compares oracle and formula") {
  const std::string cfg = write_file("interval.json", R"({
    "potential": {"diagonal": [0.5, 2.0]},
    "interval": {"bc": "dd", "cells": 400, "count": 6}
  })");
  const std::string out = (scratch_dir() / "interval.json.out").string();
  CHECK(run_cli("spectrum-interval --config " + cfg + " --out " + out) == 0);
  const json rep = json::parse(slurp(out));
  CHECK(rep["pass"] == true);
  CHECK(rep["max_rel_error"].get<double>() <= 1e-2);
  const std::vector<double> formula = {1.5, 3.0, 4.5, 6.0, 9.5, 11.0};
  REQUIRE(rep["rows"].size() == 6);
  for (int i = 0; i < 6; ++i) {
    CHECK(rep["rows"][i]["formula"].get<double>() ==
          doctest::Approx(formula[size_t(i)]).epsilon(1e-12));
    CHECK(std::abs(rep["rows"][i]["error"].get<double>()) <= 6e-2);
  }

  // An unreachable tolerance flips the exit code to 3 (check failed).
  const std::string strict = write_file("interval_strict.json", R"({
    "potential": {"diagonal": [0.5, 2.0]},
    "interval": {"bc": "dd", "cells": 400, "count": 6},
    "interval_tol": 1e-12
  })");
  CHECK(run_cli("spectrum-interval --config " + strict + " --out " + out) == 3);
}

TEST_CASE("weyl-eval pins a robin value") {
  const std::string cfg = write_file("weyl.json", R"({
    "potential": {"diagonal": [0.0]},
    "realization": {"b": {"dim": 1, "entries": [[1.0, 0.0]]}},
    "z_list": [[0.0, 1.0]]
  })");
  const std::string out = (scratch_dir() / "weyl.json.out").string();
  CHECK(run_cli("weyl-eval --config " + cfg + " --out " + out) == 0);
  const json rep = json::parse(slurp(out));
  const auto entry = rep["values"][0]["m"][0][0];
  CHECK(entry[0].get<double>() == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(entry[1].get<double>() ==
        doctest::Approx((std::sqrt(2.0) - 1.0) / 2.0).epsilon(1e-9));
}

TEST_CASE("resolvent-check agrees with the oracle") {
  const std::string cfg = write_file("resolvent.json", R"({
    "potential": {"diagonal": [1.0]},
    "realization": {"kind": "krein"},
    "z_list": [[-1.0, 0.0]],
    "x_grid": {"h": 0.005, "length": 30.0}
  })");
  const std::string out = (scratch_dir() / "resolvent.json.out").string();
  CHECK(run_cli("resolvent-check --config " + cfg + " --out " + out) == 0);
  const json rep = json::parse(slurp(out));
  CHECK(rep["pass"] == true);
  CHECK(rep["rows"][0]["rel_l2_error"].get<double>() <= 1e-3);
}

TEST_CASE("config problems exit with code 2") {
  CHECK(run_cli("multiplicity --config /nonexistent.json") == 2);

  const std::string broken = write_file("broken.json", "{not json");
  CHECK(run_cli("multiplicity --config " + broken) == 2);

  const std::string badkind = write_file("badkind.json", R"({
    "potential": {"diagonal": [1.0]},
    "realization": {"kind": "periodic"},
    "t_grid": {"min": 0.0, "max": 1.0, "count": 10}
  })");
  CHECK(run_cli("multiplicity --config " + badkind) == 2);

  // Parameter dimension mismatch is a config error too.
  const std::string mismatch = write_file("mismatch.json", R"({
    "potential": {"diagonal": [1.0]},
    "realization": {"b": {"dim": 2,
      "entries": [[1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [1.0, 0.0]]}},
    "z_list": [[0.0, 1.0]]
  })");
  CHECK(run_cli("weyl-eval --config " + mismatch) == 2);

  // Propagated typed error from the model builder.
  const std::string few = write_file("few.json", R"({
    "potential": {"schrodinger1d": {"q": [1.0, 2.0], "length": 1.0}},
    "t_grid": {"min": 0.0, "max": 1.0, "count": 10}
  })");
  CHECK(run_cli("multiplicity --config " + few) == 2);

  CHECK(run_cli("") != 0);  // missing subcommand is a usage error
}

TEST_CASE("singular pencil exits with code 4") {
  // B equals M(0.5) = -sqrt(0.5) exactly, so B - M(z) vanishes.
  const std::string cfg = write_file("singular.json", R"({
    "potential": {"diagonal": [1.0]},
    "realization": {"b": {"dim": 1, "entries": [[-0.7071067811865476, 0.0]]}},
    "z_list": [[0.5, 0.0]]
  })");
  CHECK(run_cli("weyl-eval --config " + cfg) == 4);
}

TEST_CASE("json outputs are byte-identical across runs") {
  const std::string cfg = write_file("repeat.json", R"({
    "potential": {"diagonal": [0.3, 2.0]},
    "realization": {"kind": "krein"},
    "t_grid": {"min": 0.0, "max": 6.0, "count": 50}
  })");
  const std::string o1 = (scratch_dir() / "rep1.json").string();
  const std::string o2 = (scratch_dir() / "rep2.json").string();
  CHECK(run_cli("multiplicity --config " + cfg + " --format json --out " +
                o1) == 0);
  CHECK(run_cli("multiplicity --config " + cfg + " --format json --out " +
                o2) == 0);
  const std::string text = slurp(o1);
  CHECK(!text.empty());
  CHECK(text == slurp(o2));

  // Grid override through the flag is reflected in the row count.
  const std::string o3 = (scratch_dir() / "rep3.json").string();
  CHECK(run_cli("multiplicity --config " + cfg +
                " --format json --grid-n 21 --out " + o3) == 0);
  CHECK(json::parse(slurp(o3))["rows"].size() == 21);
}

}  // TEST_SUITE
