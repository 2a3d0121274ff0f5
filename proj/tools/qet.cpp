// Command-line front end: qet <subcommand> --config cfg.json [--out dir]
#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "qet/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Ensemble-to-ensemble quantum state transfer experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  if (const char* env = std::getenv("QET_OUT_DIR")) out_dir = env;
  if (out_dir.empty()) out_dir = "qet_out";
  bool lenient = false;
  int threads = 1;
  std::optional<std::uint64_t> seed;

  app.add_option("--config", config_path, "JSON experiment configuration")
      ->required()
      ->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "Output directory (default $QET_OUT_DIR, else ./qet_out)");
  auto* strict_flag = app.add_flag("--strict", "Reject unknown config keys (default)");
  app.add_flag("--lenient", lenient, "Warn about unknown config keys instead of failing")
      ->excludes(strict_flag);
  app.add_option("--threads", threads, "Worker threads for scans")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Override the config seed");

  for (const std::string& name : qet::subcommand_names()) app.add_subcommand(name)->fallthrough();

  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();

  qet::ExperimentConfig config;
  try {
    config = qet::parse_config_file(config_path, !lenient);
  } catch (const qet::ConfigError& e) {
    std::cerr << e.what() << '\n';
    return qet::kExitConfigError;
  }
  for (const auto& w : config.warnings) std::cerr << "warning: " << w << '\n';
  if (seed) config.seed = *seed;

  try {
    const qet::RunOutcome out = qet::run_subcommand(command, config, out_dir, threads);
    for (const auto& path : out.artifacts) std::cout << path.string() << '\n';
    for (const auto& name : out.failed_thresholds)
      std::cerr << "threshold failed: " << name << '\n';
    return out.exit_code;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return qet::kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return qet::kExitRuntimeError;
  }
}
