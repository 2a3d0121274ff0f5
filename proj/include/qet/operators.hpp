#pragma once

#include "qet/basis.hpp"

namespace qet {

/// Collective quasi-spin and photon ladder matrices over a symmetric basis.
///
/// Conventions: S_+|m> = sqrt((N-m)(m+1)) |m+1>, S_z|m> = (2m-N)|m>, so
/// [S_+, S_-] = S_z. Images that fall outside the basis (photon cap or the
/// total-excitation cut) are dropped; products should apply a lowering
/// factor first to stay exact on a truncated basis.
struct CollectiveOps {
  BasisPtr basis;
  SparseMatrix s_plus_l, s_minus_l, s_z_l;
  SparseMatrix s_plus_r, s_minus_r, s_z_r;
  SparseMatrix a, a_dagger;

  const SparseMatrix& raise(Side s) const { return s == Side::left ? s_plus_l : s_plus_r; }
  const SparseMatrix& lower(Side s) const { return s == Side::left ? s_minus_l : s_minus_r; }
  const SparseMatrix& inversion(Side s) const { return s == Side::left ? s_z_l : s_z_r; }
};

CollectiveOps build_collective_ops(const BasisPtr& basis);

/// Mixing angle alpha = atan2(g_l sqrt(N_l), g_r sqrt(N_r)) in [0, pi/2].
/// Throws DomainError when both couplings vanish or either is negative.
double mixing_angle(double g_l, double g_r, int n_l, int n_r);

/// Dark (phi) and bright (psi) collective modes at a given mixing angle.
///
///   dark   = cos(alpha) S_-(l)/sqrt(N_l) - sin(alpha) S_-(r)/sqrt(N_r)
///   bright = sin(alpha) S_-(l)/sqrt(N_l) + cos(alpha) S_-(r)/sqrt(N_r)
///
/// `commutator` holds the closed form of [dark^dagger, bright],
/// sin(2 alpha)/2 (S_z(l)/N_l - S_z(r)/N_r).
struct MixingOps {
  double alpha = 0.0;
  double g_l = 0.0;
  double g_r = 0.0;
  int n_l = 1;
  int n_r = 1;
  SparseMatrix dark;
  SparseMatrix bright;
  SparseMatrix commutator;

  /// g = sqrt(g_l^2 N_l + g_r^2 N_r).
  double collective_coupling() const;
};

MixingOps build_mixing_ops(const CollectiveOps& ops, double g_l, double g_r);

/// Couplings (sin(alpha)/sqrt(N_l), cos(alpha)/sqrt(N_r)) giving unit
/// collective coupling at the requested angle.
MixingOps build_mixing_ops_at_angle(const CollectiveOps& ops, double alpha);

/// || [dark^dagger, bright] psi || from the closed-form right-hand side.
double commutator_deficit(const MixingOps& mops, const StateVector& psi);

/// Same norm from the literal product dark^dagger bright - bright dark^dagger.
/// Only exact when psi does not touch the total-excitation cut.
double commutator_deficit_direct(const MixingOps& mops, const StateVector& psi);

}  // namespace qet
