#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qet/bosonic.hpp"
#include "qet/dynamics.hpp"
#include "qet/hamiltonian.hpp"
#include "qet/raman.hpp"
#include "qet/schedule.hpp"

namespace qet {

/// All validation problems found in a configuration, each prefixed by its
/// JSON path.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> errors);
  const std::vector<std::string>& errors() const { return errors_; }

 private:
  std::vector<std::string> errors_;
};

struct ScheduleSpec {
  std::string shape = "trig_sweep";
  double total_time = 100.0;
  double peak_coupling = 1.0;
  std::optional<double> width;
  std::optional<double> center_l;
  std::optional<double> center_r;
  std::vector<CouplingSchedule::Knot> table;

  /// Constant shapes take their couplings from the model.
  CouplingSchedule build(const ModelParams& model) const;
};

struct InitialStateSpec {
  enum class Kind { product, dark, coherent, density };
  Kind kind = Kind::dark;
  Excitation product;
  int n = 1;
  double eta = 0.0;
  DenseMatrix rho;  ///< density over |e_l^n>, n = 0..rows-1
};

struct Thresholds {
  std::optional<double> min_fidelity;
  std::optional<double> max_photon;
  std::optional<double> max_darkness;
  std::optional<double> max_deviation;
  std::optional<double> monotone_tolerance;
  double normalization_tolerance = 1e-12;
};

struct RunSpec {
  double dt = 0.0;
  double norm_tolerance = 1e-8;
  double step_tolerance = 1e-9;
  int max_refinement = 10;
  int record_every = 1;
  std::vector<std::string> observables;
  std::vector<int> tracked_dark{1};
  bool compensate_endpoint_phase = true;
  std::size_t dimension_cap = 2'000'000;
  Thresholds thresholds;

  EvolveOptions evolve_options() const;
};

struct ScanSpec {
  std::vector<double> total_times{10.0, 50.0, 200.0, 1000.0};
  int n = 1;
  double target_fidelity = 0.99;
};

struct DarkcheckSpec {
  std::vector<int> n_atoms{2, 4, 8};
  std::vector<int> n{1, 2};
  std::vector<double> alpha{0.78539816339744831};
  int random_alphas = 0;  ///< extra angles drawn from the seed
};

struct AnalyticSpec {
  double omega = 0.0;
  double epsilon = 0.0;
  double g = 1.0;
  double alpha = 0.78539816339744831;
  double t_max = 20.0;
  int samples = 201;
};

struct BosonicCheckSpec {
  double eta = 0.5;
  int fock_cap = 12;
  std::vector<int> n_atoms{8, 16, 32};
  double t_max = 20.0;
  int samples = 201;
};

struct RamanSpec {
  RamanParams params;
  Side side = Side::left;
  double duration = 100.0;
  double dt = 0.01;
};

struct ExperimentConfig {
  ModelParams model;
  ScheduleSpec schedule;
  InitialStateSpec initial_state;
  RunSpec run;
  ScanSpec scan;
  DarkcheckSpec darkcheck;
  AnalyticSpec analytic;
  BosonicCheckSpec bosonic_check;
  RamanSpec raman;
  std::uint64_t seed = 0;
  /// Unknown keys skipped in lenient mode.
  std::vector<std::string> warnings;
};

/// Parses and validates. Strict mode rejects unknown keys; every error is
/// collected before throwing ConfigError.
ExperimentConfig parse_config(const std::string& text, bool strict = true);
ExperimentConfig parse_config_file(const std::string& path, bool strict = true);

/// Normalized form with every default spelled out.
nlohmann::json to_json(const ExperimentConfig& config);

/// Parses a name such as "photon_population"; throws std::invalid_argument.
Observable parse_observable(const std::string& name);

}  // namespace qet
