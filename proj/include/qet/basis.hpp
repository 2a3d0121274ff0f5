#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "qet/types.hpp"

namespace qet {

/// Occupation triple |m_l, m_r, n_ph>: symmetric excitations in each ensemble
/// plus the photon number of the shared mode.
struct Excitation {
  int m_l = 0;
  int m_r = 0;
  int n_ph = 0;

  int total() const { return m_l + m_r + n_ph; }
  auto operator<=>(const Excitation&) const = default;
};

/// Contiguous index range [offset, offset + size) of one excitation block.
struct BlockRange {
  std::size_t offset = 0;
  std::size_t size = 0;

  bool empty() const { return size == 0; }
  bool contains(std::size_t i) const { return i >= offset && i < offset + size; }
};

/// Symmetric (Dicke) product basis of two collective spins and a truncated
/// photon mode, ordered by total excitation E and lexicographically by
/// (m_l, m_r, n_ph) inside each block. Immutable after construction.
class BasisIndex {
 public:
  static constexpr std::size_t kDefaultDimensionCap = 2'000'000;

  BasisIndex(int n_l_atoms, int n_r_atoms, int photon_cap,
             std::optional<int> max_total_excitation = std::nullopt,
             std::size_t dimension_cap = kDefaultDimensionCap);

  int n_l_atoms() const { return n_l_; }
  int n_r_atoms() const { return n_r_; }
  int photon_cap() const { return photon_cap_; }
  int n_atoms(Side s) const { return s == Side::left ? n_l_ : n_r_; }

  /// Largest total excitation present in the basis.
  int max_total_excitation() const { return max_e_; }
  bool truncated() const { return max_e_ < n_l_ + n_r_ + photon_cap_; }

  std::size_t size() const { return states_.size(); }
  const std::vector<Excitation>& states() const { return states_; }
  const Excitation& state(std::size_t i) const { return states_.at(i); }

  std::optional<std::size_t> find(const Excitation& e) const;
  /// Throws std::out_of_range naming the first offending coordinate.
  std::size_t index_of(const Excitation& e) const;

  BlockRange block(int total) const;
  int num_blocks() const { return static_cast<int>(blocks_.size()); }

  /// Number of states a basis with these parameters would hold.
  static std::uint64_t count_states(int n_l_atoms, int n_r_atoms, int photon_cap,
                                    std::optional<int> max_total_excitation);

 private:
  static std::uint64_t key(const Excitation& e);

  int n_l_;
  int n_r_;
  int photon_cap_;
  int max_e_;
  std::vector<Excitation> states_;
  std::vector<BlockRange> blocks_;
  std::unordered_map<std::uint64_t, std::size_t> lookup_;
};

using BasisPtr = std::shared_ptr<const BasisIndex>;

BasisPtr build_basis(int n_l_atoms, int n_r_atoms, int photon_cap,
                     std::optional<int> max_total_excitation = std::nullopt,
                     std::size_t dimension_cap = BasisIndex::kDefaultDimensionCap);

/// Complex amplitudes over a BasisIndex.
class StateVector {
 public:
  explicit StateVector(BasisPtr basis);
  StateVector(BasisPtr basis, Vector amplitudes);

  const BasisIndex& basis() const { return *basis_; }
  const BasisPtr& basis_ptr() const { return basis_; }

  Vector& amplitudes() { return amps_; }
  const Vector& amplitudes() const { return amps_; }

  cplx amplitude(const Excitation& e) const;
  double norm() const { return amps_.norm(); }
  /// Throws DomainError on the zero vector.
  void normalize();

  /// <this|other>; both vectors must share the same basis object.
  cplx inner(const StateVector& other) const;

  /// The single block E carrying all nonzero amplitudes, if there is one.
  std::optional<int> support_block() const;
  /// Blocks with any nonzero amplitude, ascending.
  std::vector<int> support_blocks() const;

 private:
  BasisPtr basis_;
  Vector amps_;
};

/// Unit vector on |m_l, m_r, n_ph>.
StateVector product_state(const BasisPtr& basis, int m_l, int m_r, int n_ph);

/// Individual-atom basis: every spin configuration of N_l + N_r atoms times a
/// truncated Fock state. Oracle-only; capped at 12 atoms.
class FullSpinBasis {
 public:
  static constexpr int kMaxAtoms = 12;

  FullSpinBasis(int n_l_atoms, int n_r_atoms, int photon_cap);

  int n_l_atoms() const { return n_l_; }
  int n_r_atoms() const { return n_r_; }
  int photon_cap() const { return photon_cap_; }
  std::size_t spin_states() const { return std::size_t{1} << (n_l_ + n_r_); }
  std::size_t size() const { return spin_states() * (photon_cap_ + 1); }

  /// Bit j < N_l is left atom j, bit N_l + j is right atom j; set means excited.
  std::size_t index(std::uint32_t spin_bits, int n_ph) const;

  /// Equal-weight symmetrized configuration sum for a Dicke product state.
  Vector embed(const Excitation& e) const;
  /// Linear extension of embed() to a symmetric state vector.
  Vector embed(const StateVector& psi) const;

  /// (1/sqrt(N_s)) sum_j exp(2 pi i j k / N_s) |.. e_j ..>, atoms indexed
  /// j = 0..N_s-1, other ensemble in its ground state, photon vacuum.
  Vector fourier_excitation(Side side, int k) const;

  /// Collective ladder / inversion operators summed over one ensemble.
  SparseMatrix collective_raise(Side side) const;
  SparseMatrix collective_lower(Side side) const;
  SparseMatrix collective_inversion(Side side) const;
  /// (1/sqrt(N_s)) sum_j exp(2 pi i j k / N_s) sigma_-^[j].
  SparseMatrix fourier_lower(Side side, int k) const;
  SparseMatrix photon_lower() const;

  /// Many-atom Hamiltonian with individual spins (same conventions as the
  /// symmetric-basis builder).
  SparseMatrix hamiltonian(double omega_l, double omega_r, double omega_ph, double g_l,
                           double g_r) const;

 private:
  int atom_bit(Side side, int j) const;
  int atoms(Side side) const { return side == Side::left ? n_l_ : n_r_; }

  int n_l_;
  int n_r_;
  int photon_cap_;
};

}  // namespace qet
