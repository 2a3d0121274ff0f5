#pragma once

#include <span>
#include <vector>

#include "qet/types.hpp"

namespace qet {

/// Macroscopic-limit model: photon a (frequency omega), ensemble bosons b_l,
/// b_r (frequency epsilon), coupled through the bright mode
/// psi = sin(alpha) b_l + cos(alpha) b_r with collective coupling g.
struct BosonicParams {
  double omega = 0.0;
  double epsilon = 0.0;
  double g = 1.0;
  double alpha = 0.0;
  double eta = 0.0;

  /// Xi = sqrt(((omega - epsilon)/2)^2 + g^2).
  double xi() const;
  /// Theta = (omega + epsilon)/2.
  double mean_frequency() const;
  /// Polariton angle vartheta = atan2(2g, omega - epsilon) in [0, pi].
  double polariton_angle() const;
};

struct PolaritonTransform {
  double angle = 0.0;
  double upper = 0.0;  ///< Theta + Xi, mode A
  double lower = 0.0;  ///< Theta - Xi, mode B
  double dark = 0.0;   ///< epsilon, mode phi
  /// Rows give (A, B) in terms of (a, psi).
  Eigen::Matrix2d rotation;
};

PolaritonTransform polariton_transform(const BosonicParams& p);

/// Coherent amplitudes per unit eta: <b_l>/eta, <b_r>/eta, <a>/eta.
struct ModeAmplitudes {
  cplx left;
  cplx right;
  cplx photon;

  double norm_sq() const { return std::norm(left) + std::norm(right) + std::norm(photon); }
};

/// Closed-form f(t), g(t), h(t) obtained from the polariton decomposition.
ModeAmplitudes analytic_amplitudes(const BosonicParams& p, double t);

/// Same amplitudes from exp(-i M t) of the 3x3 single-particle matrix.
ModeAmplitudes mode_rotation_amplitudes(const BosonicParams& p, double t);

/// e^{-eta^2} sum_{k > cap} eta^{2k}/k!: probability outside a truncated
/// coherent state.
double coherent_tail(double eta, int cap);

struct CoherentSample {
  double t = 0.0;
  cplx b_l, b_r, a;
  double total_quanta = 0.0;  ///< <a^dagger a + b_l^dagger b_l + b_r^dagger b_r>
  double dark_quanta = 0.0;   ///< <phi^dagger phi>
  double photon_number = 0.0;
  double purity_l = 1.0, purity_r = 1.0, purity_ph = 1.0;
  double deviation = 0.0;  ///< max mode |numeric - eta * analytic|
};

struct CoherentEvolution {
  std::vector<CoherentSample> samples;
  double max_deviation = 0.0;
  double truncation_error = 0.0;
  double max_quanta_drift = 0.0;
  double max_dark_drift = 0.0;
  double min_purity = 1.0;
};

/// Three-mode Fock-space evolution of |eta>_l |0>_r |0>_p. The basis keeps
/// total quanta <= fock_cap, which the number-conserving Hamiltonian never
/// leaves, so the only error is the initial truncation; throws DomainError
/// when coherent_tail(eta, fock_cap) exceeds truncation_tolerance.
CoherentEvolution coherent_evolution_numeric(const BosonicParams& p, int fock_cap,
                                             std::span<const double> t_grid,
                                             double truncation_tolerance = 1e-10);

/// Dicke amplitudes of exp(eta (S_+ - S_-)/sqrt(N)) |g>, i.e. the collective
/// Rabi rotation sqrt(C(N,m)) cos^{N-m}(eta/sqrt N) sin^m(eta/sqrt N).
std::vector<double> spin_coherent_amplitudes(int n_atoms, double eta);

struct ConvergenceRow {
  int n_atoms = 0;
  double max_deviation = 0.0;  ///< max_t |<S_-(l)>/sqrt(N) - eta f(t)|
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  /// Max over N and t of the single-excitation amplitude mismatch against
  /// (f, g, h) starting from |e_l^1>.
  double single_excitation_deviation = 0.0;
  bool monotone = true;
};

/// Finite-N Dicke dynamics (N_l = N_r = N, full picture, constant couplings
/// g_l = g sin(alpha)/sqrt(N), g_r = g cos(alpha)/sqrt(N)) against the
/// bosonic-limit prediction, for each N in the list (ascending). t_grid must
/// be uniform and start at 0. The photon cap is raised to the Dicke-ladder
/// cut when that is larger.
ConvergenceReport finite_N_convergence(const BosonicParams& p, std::span<const int> n_list,
                                       std::span<const double> t_grid, int photon_cap = 6,
                                       int threads = 1);

}  // namespace qet
