#include "qet/darkstate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace qet {

DarkState build_dark_state(const MixingOps& mops, const BasisPtr& basis, int n) {
  if (n < 0) throw std::invalid_argument("dark-state exciton number must be >= 0");
  if (n > basis->n_l_atoms() + basis->n_r_atoms())
    throw std::invalid_argument("n = " + std::to_string(n) + " exceeds N_l + N_r = " +
                                std::to_string(basis->n_l_atoms() + basis->n_r_atoms()));
  if (n > basis->max_total_excitation())
    throw std::invalid_argument("basis truncated below excitation block " + std::to_string(n));

  const SparseMatrix raise = mops.dark.adjoint();
  Vector v = product_state(basis, 0, 0, 0).amplitudes();
  for (int k = 1; k <= n; ++k) v = (raise * v) / std::sqrt(static_cast<double>(k));

  DarkState d{StateVector(basis, std::move(v)), n, mops.alpha, 0.0};
  d.norm_before_normalization = d.state.norm();
  d.state.normalize();
  return d;
}

Darkness darkness(const MixingOps& mops, const HamiltonianMatrix& h_int, const StateVector& psi) {
  const double raw = (h_int.matrix * psi.amplitudes()).norm();
  const double g = mops.collective_coupling();
  if (g == 0.0) return {raw, false};
  return {raw / g, true};
}

DarkStateReport dark_state_report(int n_l, int n_r, int n, double alpha) {
  // E <= n keeps the basis small; H_I maps block n into itself, and the
  // photon cap 1 covers the only photon state H_I can reach from |D(n)>.
  auto basis = build_basis(n_l, n_r, 1, n);
  const CollectiveOps ops = build_collective_ops(basis);
  const MixingOps mops = build_mixing_ops_at_angle(ops, alpha);
  const DarkState d = build_dark_state(mops, basis, n);
  const HamiltonianMatrix h = build_interaction_hamiltonian(mops, ops);

  DarkStateReport r;
  r.n = n;
  r.alpha = alpha;
  r.norm_before_normalization = d.norm_before_normalization;
  r.darkness = darkness(mops, h, d.state).value;
  r.overlap_left = d.state.amplitude({n, 0, 0});
  r.overlap_right = d.state.amplitude({0, n, 0});
  return r;
}

EndpointReport endpoint_check(int n, const BasisPtr& basis) {
  const CollectiveOps ops = build_collective_ops(basis);
  const DarkState at_zero = build_dark_state(build_mixing_ops(ops, 0.0, 1.0), basis, n);
  const DarkState at_half_pi = build_dark_state(build_mixing_ops(ops, 1.0, 0.0), basis, n);

  EndpointReport r;
  r.n = n;
  r.left_overlap = at_zero.state.amplitude({n, 0, 0});
  r.right_overlap = at_half_pi.state.amplitude({0, n, 0});
  r.sign = (n % 2 == 0) ? 1 : -1;
  r.error = std::max(std::abs(std::abs(r.left_overlap) - 1.0),
                     std::abs(std::abs(r.right_overlap) - 1.0));
  return r;
}

DenseMatrix dark_state_gram(const MixingOps& mops, const BasisPtr& basis, int n_max) {
  std::vector<StateVector> states;
  for (int n = 0; n <= n_max; ++n) states.push_back(build_dark_state(mops, basis, n).state);
  DenseMatrix gram(n_max + 1, n_max + 1);
  for (int i = 0; i <= n_max; ++i)
    for (int j = 0; j <= n_max; ++j) gram(i, j) = states[i].inner(states[j]);
  return gram;
}

}  // namespace qet
