#pragma once

#include <array>
#include <vector>

#include "qet/types.hpp"

namespace qet {

/// Driven three-level atom: |g> and |e> metastable, |a> auxiliary. The
/// quantized mode drives a<->g with Rabi scale Omega, the classical field
/// drives a<->e with Omega_s, both detuned by Delta.
struct RamanParams {
  cplx omega_quantized{1.0, 0.0};
  cplx omega_left{1.0, 0.0};
  cplx omega_right{1.0, 0.0};
  double detuning = 10.0;
  double omega_atomic = 0.0;

  const cplx& drive(Side s) const { return s == Side::left ? omega_left : omega_right; }
  /// max(|Omega|, |Omega_s|) / |Delta| over both sides.
  double validity_ratio() const;
};

struct EffectiveCoupling {
  double magnitude = 0.0;
  cplx raw;  ///< -Omega conj(Omega_s) / Delta
};

/// Throws DomainError for Delta = 0.
EffectiveCoupling effective_coupling(const RamanParams& p, Side side);

struct StarkShifts {
  double ground = 0.0;           ///< -|Omega|^2 n / Delta
  double excited = 0.0;          ///< -|Omega_s|^2 / Delta
  double omega_effective = 0.0;  ///< omega_atomic + |Omega|^2 n / Delta - |Omega_s|^2 / Delta
};

StarkShifts stark_shifts(const RamanParams& p, int photon_number, Side side);

struct RamanOracleResult {
  std::vector<double> times;
  std::vector<std::array<double, 3>> full;       ///< P_g, P_e, P_a
  std::vector<std::array<double, 2>> effective;  ///< P_g, P_e
  double max_deviation = 0.0;
  double max_upper_population = 0.0;
  double max_norm_drift = 0.0;
  bool validity_warning = false;
};

/// Integrates the exact three-level model restricted to {|g,1>, |e,0>, |a,0>}
/// (rotating frame of the drive) next to the eliminated two-level model on
/// {|g,1>, |e,0>}, both starting in |e,0>, and compares populations.
/// Throws IntegrationError if the norm drifts by more than norm_tolerance.
RamanOracleResult single_atom_oracle(const RamanParams& p, Side side, double duration, double dt,
                                     double norm_tolerance = 1e-8);

}  // namespace qet
