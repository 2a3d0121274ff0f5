#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "qet/config.hpp"

namespace qet {

enum ExitCode : int {
  kExitOk = 0,
  kExitThresholdFailed = 1,
  kExitConfigError = 2,
  kExitRuntimeError = 3,
};

struct RunOutcome {
  int exit_code = kExitOk;
  std::vector<std::string> failed_thresholds;
  std::vector<std::filesystem::path> artifacts;
};

/// evolve, scan, darkcheck, analytic, bosonic-check, raman-oracle, hamiltonian.
const std::vector<std::string>& subcommand_names();

/// Runs one experiment and writes its CSV/JSON artifacts into out_dir
/// (created if missing). Every run writes <name>_summary.json. Throws
/// std::invalid_argument for an unknown subcommand and std::runtime_error
/// naming the path on I/O failure.
RunOutcome run_subcommand(const std::string& name, const ExperimentConfig& config,
                          const std::filesystem::path& out_dir, int threads = 1);

/// State count per excitation block.
nlohmann::json basis_summary(const BasisIndex& basis);

/// %.16e, i.e. 17 significant digits.
std::string format_real(double x);

}  // namespace qet
