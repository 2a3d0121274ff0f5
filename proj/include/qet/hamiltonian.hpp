#pragma once

#include <iosfwd>
#include <memory>
#include <mutex>
#include <vector>

#include "qet/operators.hpp"
#include "qet/schedule.hpp"

namespace qet {

enum class Picture {
  full,         ///< laboratory frame, every term of the many-atom Hamiltonian
  interaction,  ///< eps (S_z(l)/2 + S_z(r)/2 + a^dagger a) removed
};

/// Stark-shift scales |Omega|^2/Delta, |Omega_l|^2/Delta, |Omega_r|^2/Delta.
struct StarkScales {
  double quantized = 0.0;
  double left = 0.0;
  double right = 0.0;
};

/// Parameters of the two-ensemble model. `epsilon` is the common two-level
/// splitting; `omega_ph` is the photon frequency multiplying a^dagger a.
/// With Stark shifts on, the splitting of side s becomes
/// eps + quantized * n_ph - s, read off the photon number of each basis state.
struct ModelParams {
  int n_l = 1;
  int n_r = 1;
  double epsilon = 0.0;
  double omega_ph = 0.0;
  double g_l = 0.0;
  double g_r = 0.0;
  int photon_cap = 1;
  bool include_stark = false;
  StarkScales stark;
  Picture picture = Picture::interaction;

  /// Effective splitting omega_s(n_ph).
  double splitting(Side side, int n_ph) const;
  /// Throws std::invalid_argument with every violated constraint.
  void validate() const;
};

/// Sparse Hermitian matrix over a basis, block diagonal in total excitation.
struct HamiltonianMatrix {
  BasisPtr basis;
  SparseMatrix matrix;

  /// Dense restriction to block E.
  DenseMatrix block(int total) const;
  /// Prints one "row col re im" line per stored nonzero, row-major order.
  void write_triplets(std::ostream& os) const;
};

/// Unit-coupling hopping terms a S_+(s) + h.c., built element by element.
SparseMatrix coupling_term(const BasisIndex& basis, Side side);

/// Diagonal part: splittings, photon energy and optional Stark terms, in the
/// requested picture.
SparseMatrix static_term(const ModelParams& params, const BasisIndex& basis);

/// Many-atom Hamiltonian with the couplings held in params.
HamiltonianMatrix build_full_hamiltonian(const ModelParams& params, const CollectiveOps& ops);

/// g (a psi^dagger + a^dagger psi) with g = sqrt(g_l^2 N_l + g_r^2 N_r),
/// assembled from the bright-mode operator.
HamiltonianMatrix build_interaction_hamiltonian(const MixingOps& mops, const CollectiveOps& ops);

/// Hamiltonian under a coupling schedule. The static part and the unit
/// coupling terms are built once; evaluation only rescales the couplings.
class ScheduledHamiltonian {
 public:
  ScheduledHamiltonian(ModelParams params, BasisPtr basis, CouplingSchedule schedule);

  const ModelParams& params() const { return params_; }
  const CouplingSchedule& schedule() const { return schedule_; }
  const BasisPtr& basis() const { return basis_; }

  HamiltonianMatrix at(double t) const;
  /// Dense block E at time t (cached per-block pieces).
  DenseMatrix block_at(int total, double t) const;

 private:
  struct BlockCache {
    DenseMatrix diag;
    DenseMatrix hop_l;
    DenseMatrix hop_r;
  };
  const BlockCache& cache(int total) const;

  ModelParams params_;
  BasisPtr basis_;
  CouplingSchedule schedule_;
  SparseMatrix static_;
  SparseMatrix hop_l_;
  SparseMatrix hop_r_;
  // Filled on first use under cache_mutex_.
  mutable std::unique_ptr<std::mutex> cache_mutex_ = std::make_unique<std::mutex>();
  mutable std::vector<std::unique_ptr<BlockCache>> blocks_;
};

/// Free-function form of ScheduledHamiltonian::at.
HamiltonianMatrix hamiltonian_at(const ModelParams& params, const BasisPtr& basis,
                                 const CouplingSchedule& schedule, double t);

}  // namespace qet
