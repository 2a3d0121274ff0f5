#pragma once

#include "qet/hamiltonian.hpp"

namespace qet {

/// Normalized |D(n)> = (dark^dagger)^n |g_l, g_r, 0> / sqrt(n!), with the
/// norm it had before normalization (1 only in the bosonic limit).
struct DarkState {
  StateVector state;
  int n = 0;
  double alpha = 0.0;
  double norm_before_normalization = 1.0;
};

/// Requires n <= N_l + N_r and the basis to hold block E = n.
DarkState build_dark_state(const MixingOps& mops, const BasisPtr& basis, int n);

struct Darkness {
  double value = 0.0;
  /// False when the collective coupling is zero and `value` is the raw norm.
  bool relative_to_coupling = true;
};

/// ||H_I psi|| / g.
Darkness darkness(const MixingOps& mops, const HamiltonianMatrix& h_int, const StateVector& psi);

struct DarkStateReport {
  int n = 0;
  double alpha = 0.0;
  double norm_before_normalization = 1.0;
  double darkness = 0.0;
  cplx overlap_left;   ///< <e_l^n, e_r^0, 0 | D(n)>
  cplx overlap_right;  ///< <e_l^0, e_r^n, 0 | D(n)>
};

/// Builds |D(n)> at angle alpha on a basis truncated to E <= n and measures it.
DarkStateReport dark_state_report(int n_l, int n_r, int n, double alpha);

struct EndpointReport {
  int n = 0;
  cplx left_overlap;   ///< <e_l^n | D(n, alpha = 0)>
  cplx right_overlap;  ///< <e_r^n | D(n, alpha = pi/2)>
  int sign = 1;        ///< (-1)^n carried by the alpha = pi/2 endpoint
  double error = 0.0;  ///< max deviation of |overlap| from 1
};

EndpointReport endpoint_check(int n, const BasisPtr& basis);

/// <D(m)|D(n)> for m, n <= n_max. Different n live in different excitation
/// blocks, so this is the identity up to roundoff; reported, not enforced.
DenseMatrix dark_state_gram(const MixingOps& mops, const BasisPtr& basis, int n_max);

}  // namespace qet
