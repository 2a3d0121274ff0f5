#pragma once

#include <optional>
#include <vector>

#include "qet/darkstate.hpp"
#include "qet/hamiltonian.hpp"
#include "qet/schedule.hpp"

namespace qet {

enum class Observable {
  alpha,               ///< instantaneous mixing angle
  dark_population,     ///< |<D(n, alpha(t)) | psi>|^2 for each tracked n
  photon_population,   ///< probability of n_ph > 0
  exciton_number,      ///< <dark^dagger dark> at alpha(t)
  left_population,     ///< probability of m_l > 0
  right_population,    ///< probability of m_r > 0
  left_lowering,       ///< <S_-(l)> / sqrt(N_l)
};

struct EvolveOptions {
  double dt = 0.0;  ///< 0 selects 0.05 / peak coupling
  double norm_tolerance = 1e-8;
  /// Local step-doubling error above which a step is split in half.
  double step_tolerance = 1e-9;
  int max_refinement = 10;
  int record_every = 1;
  std::vector<Observable> observables;
  std::vector<int> tracked_dark{1};
  bool keep_snapshots = false;
};

struct EvolutionResult {
  std::vector<double> times;
  std::vector<StateVector> snapshots;
  std::optional<StateVector> final_state;
  double norm_drift = 0.0;
  double max_step_error = 0.0;
  long steps = 0;
  long refined_steps = 0;

  std::vector<double> alpha;
  std::vector<std::vector<double>> dark_population;  ///< [tracked n][record]
  std::vector<double> photon_population;
  std::vector<double> exciton_number;
  std::vector<double> left_population;
  std::vector<double> right_population;
  std::vector<cplx> left_lowering;
};

/// Propagates i d psi/dt = H(t) psi block by block with the exponential of
/// the midpoint Hamiltonian. Each step is compared with two half steps; the
/// half-step result is kept and steps whose difference exceeds
/// step_tolerance are split recursively. Throws IntegrationError when the
/// norm drifts beyond norm_tolerance.
EvolutionResult evolve(const ModelParams& params, const CouplingSchedule& schedule,
                       const StateVector& initial, const EvolveOptions& options);

struct TransferOptions {
  EvolveOptions evolve;
  /// Apply the (-1)^(n-m) endpoint sign to the target state.
  bool compensate_endpoint_phase = true;
};

struct Leakage {
  double photon = 0.0;  ///< final population with n_ph > 0
  double left = 0.0;    ///< final population with m_l > 0
  double max_photon = 0.0;  ///< largest photon population during the sweep
};

struct TransferResult {
  DenseMatrix rho_right;   ///< reduced state over |e_r^m>, m = 0..N_r
  DenseMatrix rho_target;  ///< ideal transferred state, same shape
  double fidelity = 0.0;   ///< Uhlmann fidelity of the two
  Leakage leakage;
  double norm_drift = 0.0;
};

/// Lifts each |e_l^n> of the stored density matrix to |D(n, alpha(0))>,
/// evolves the kets, reassembles the total state, and traces out the left
/// ensemble and the photon. Throws for non-Hermitian, non-PSD or non-unit
/// trace input, or n_max > min(N_l, N_r).
TransferResult transfer_experiment(const ModelParams& params, const CouplingSchedule& schedule,
                                   const DenseMatrix& stored_state,
                                   const TransferOptions& options = {});

struct ScanRow {
  double total_time = 0.0;
  double fidelity = 0.0;
  double max_photon_population = 0.0;
};

struct ScanResult {
  std::vector<ScanRow> rows;
  /// First T (in list order) whose fidelity reaches the target.
  std::optional<double> threshold_time;
};

/// Transfer of |e_l^n> for the schedule stretched to each T. Runs on up to
/// `threads` workers; rows keep the order of `times`.
ScanResult adiabaticity_scan(const ModelParams& params, const CouplingSchedule& base,
                             const std::vector<double>& times, int n, double target_fidelity,
                             const TransferOptions& options = {}, int threads = 1);

}  // namespace qet
