#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "qet/cli.hpp"

using namespace qet;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("qet_test_cli_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(slurp(p));
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

nlohmann::json read_json(const fs::path& p) { return nlohmann::json::parse(slurp(p)); }

const char* kSmallEvolve = R"({
  "model": {"n_l": 2, "n_r": 2},
  "schedule": {"shape": "trig_sweep", "total_time": 40},
  "initial_state": {"kind": "dark", "n": 1}
})";

}  // namespace

TEST_CASE("number formatting") {
  CHECK(format_real(0.5) == "5.0000000000000000e-01");
  CHECK(format_real(-3.0) == "-3.0000000000000000e+00");
}

TEST_CASE("darkcheck writes one row per (N, n, alpha)") {
  const ExperimentConfig c = parse_config(R"({
    "darkcheck": {"n_atoms": [2, 4, 8], "n": [1, 2], "alpha": [0.7853981633974483]},
    "run": {"thresholds": {"max_darkness": 1e-12}}
  })");
  const fs::path dir = fresh_dir("darkcheck");
  const RunOutcome r = run_subcommand("darkcheck", c, dir);
  CHECK(r.exit_code == kExitOk);
  const auto rows = read_csv(dir / "darkcheck.csv");
  REQUIRE(rows.size() == 7);
  CHECK(rows[0] == std::vector<std::string>{"N_l", "N_r", "n", "alpha", "norm_deficit", "darkness"});
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double d = std::stod(rows[i][5]);
    if (rows[i][2] == "1") CHECK(d < 1e-12);
    if (rows[i][2] == "2") CHECK(d > 0.01);
  }
  const nlohmann::json s = read_json(dir / "darkcheck_summary.json");
  CHECK(s["passed"] == true);
  CHECK(s["subcommand"] == "darkcheck");
}

TEST_CASE("random alphas follow the seed") {
  const std::string text = R"({"darkcheck": {"n_atoms": [3], "n": [1], "alpha": [], "random_alphas": 4}, "seed": 9})";
  const fs::path a = fresh_dir("seed_a"), b = fresh_dir("seed_b");
  run_subcommand("darkcheck", parse_config(text), a);
  run_subcommand("darkcheck", parse_config(text), b);
  CHECK(read_csv(a / "darkcheck.csv").size() == 5);
  CHECK(slurp(a / "darkcheck.csv") == slurp(b / "darkcheck.csv"));
}

TEST_CASE("evolve output is reproducible byte for byte") {
  const ExperimentConfig c = parse_config(kSmallEvolve);
  const fs::path a = fresh_dir("evolve_a"), b = fresh_dir("evolve_b");
  CHECK(run_subcommand("evolve", c, a).exit_code == kExitOk);
  CHECK(run_subcommand("evolve", c, b).exit_code == kExitOk);
  const std::string csv = slurp(a / "evolve.csv");
  CHECK(csv == slurp(b / "evolve.csv"));
  CHECK(slurp(a / "evolve_summary.json") == slurp(b / "evolve_summary.json"));
  const auto rows = read_csv(a / "evolve.csv");
  REQUIRE(rows.size() > 2);
  CHECK(rows[0][0] == "t");
  CHECK(rows.back()[0] == format_real(40.0));
}

TEST_CASE("evolve from a stored density matrix") {
  const ExperimentConfig c = parse_config(R"({
    "model": {"n_l": 2, "n_r": 2},
    "schedule": {"total_time": 100},
    "initial_state": {"kind": "density", "rho": [[0.5, 0.5], [0.5, 0.5]]},
    "run": {"thresholds": {"min_fidelity": 0.9}}
  })");
  const fs::path dir = fresh_dir("density");
  CHECK(run_subcommand("evolve", c, dir).exit_code == kExitOk);
  CHECK(fs::exists(dir / "evolve_density.csv"));
  CHECK(read_json(dir / "evolve_summary.json")["fidelity"].get<double>() >= 0.9);
}

TEST_CASE("analytic normalization column") {
  const ExperimentConfig c = parse_config(R"({"analytic": {"t_max": 30, "samples": 301}})");
  const fs::path dir = fresh_dir("analytic");
  CHECK(run_subcommand("analytic", c, dir).exit_code == kExitOk);
  const auto rows = read_csv(dir / "analytic.csv");
  REQUIRE(rows.size() == 302);
  CHECK(rows[0].back() == "norm");
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(std::abs(std::stod(rows[i].back()) - 1.0) < 1e-12);
}

TEST_CASE("failing threshold gives exit code 1") {
  const ExperimentConfig c = parse_config(R"({
    "model": {"n_l": 2, "n_r": 2},
    "schedule": {"total_time": 2},
    "initial_state": {"kind": "dark", "n": 1},
    "run": {"thresholds": {"min_fidelity": 0.99}}
  })");
  const fs::path dir = fresh_dir("threshold");
  const RunOutcome r = run_subcommand("evolve", c, dir);
  CHECK(r.exit_code == kExitThresholdFailed);
  CHECK(r.failed_thresholds == std::vector<std::string>{"fidelity"});
  const nlohmann::json s = read_json(dir / "evolve_summary.json");
  CHECK(s["passed"] == false);
  CHECK(s["thresholds"][0]["passed"] == false);
}

TEST_CASE("runtime failures still leave a summary") {
  const ExperimentConfig c = parse_config(R"({
    "model": {"n_l": 3, "n_r": 3, "photon_cap": 2},
    "initial_state": {"kind": "dark", "n": 2},
    "run": {"norm_tolerance": 1e-300}
  })");
  const fs::path dir = fresh_dir("runtime");
  CHECK_THROWS_AS(run_subcommand("evolve", c, dir), IntegrationError);
  const nlohmann::json s = read_json(dir / "evolve_summary.json");
  CHECK(s["passed"] == false);
  CHECK(s["error"].get<std::string>().find("norm drift") != std::string::npos);
}

TEST_CASE("unknown subcommand") {
  CHECK_THROWS_AS(run_subcommand("teleport", parse_config("{}"), fresh_dir("unknown")),
                  std::invalid_argument);
  CHECK(subcommand_names().size() == 7);
}

TEST_CASE("scan output does not depend on the thread count") {
  const ExperimentConfig c = parse_config(R"({
    "model": {"n_l": 3, "n_r": 3},
    "scan": {"total_times": [5, 20, 80], "n": 1},
    "run": {"thresholds": {"monotone_tolerance": 1e-3}}
  })");
  const fs::path a = fresh_dir("scan_a"), b = fresh_dir("scan_b");
  CHECK(run_subcommand("scan", c, a, 1).exit_code == kExitOk);
  CHECK(run_subcommand("scan", c, b, 3).exit_code == kExitOk);
  CHECK(slurp(a / "scan.csv") == slurp(b / "scan.csv"));
  CHECK(read_csv(a / "scan.csv").size() == 4);
}

TEST_CASE("bosonic check and raman oracle") {
  const ExperimentConfig c = parse_config(R"({
    "bosonic_check": {"n_atoms": [4, 8], "t_max": 10, "samples": 51},
    "raman": {"duration": 20, "dt": 0.01},
    "run": {"thresholds": {"max_deviation": 0.3}}
  })");
  const fs::path dir = fresh_dir("bosonic");
  CHECK(run_subcommand("bosonic-check", c, dir).exit_code == kExitOk);
  CHECK(read_csv(dir / "bosonic_coherent.csv").size() == 52);
  CHECK(read_csv(dir / "bosonic_convergence.csv").size() == 3);
  CHECK(run_subcommand("raman-oracle", c, dir).exit_code == kExitOk);
  const auto rows = read_csv(dir / "raman_oracle.csv");
  CHECK(rows[0] == std::vector<std::string>{"t", "P_g", "P_e", "P_a", "P_g_eff", "P_e_eff"});
}

TEST_CASE("hamiltonian export") {
  const ExperimentConfig c = parse_config(R"({"model": {"n_l": 1, "n_r": 1, "g_l": 0.5, "g_r": 0.5},
                                              "schedule": {"shape": "constant", "total_time": 1}})");
  const fs::path dir = fresh_dir("hamiltonian");
  CHECK(run_subcommand("hamiltonian", c, dir).exit_code == kExitOk);
  const std::string text = slurp(dir / "hamiltonian.txt");
  CHECK(std::count(text.begin(), text.end(), '\n') > 0);
  CHECK(text.find("5.0000000000000000e-01") != std::string::npos);
  const nlohmann::json s = read_json(dir / "hamiltonian_summary.json");
  CHECK(s.contains("basis"));
}
