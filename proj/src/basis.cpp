#include "qet/basis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

namespace qet {

namespace {

std::uint64_t photon_states_in_range(int photon_cap, long long budget) {
  if (budget < 0) return 0;
  return static_cast<std::uint64_t>(std::min<long long>(photon_cap, budget) + 1);
}

}  // namespace

std::uint64_t BasisIndex::count_states(int n_l, int n_r, int photon_cap,
                                       std::optional<int> max_e) {
  const std::uint64_t full = static_cast<std::uint64_t>(n_l + 1) *
                             static_cast<std::uint64_t>(n_r + 1) *
                             static_cast<std::uint64_t>(photon_cap + 1);
  if (!max_e || *max_e >= n_l + n_r + photon_cap) return full;
  std::uint64_t count = 0;
  for (int ml = 0; ml <= std::min(n_l, *max_e); ++ml) {
    for (int mr = 0; mr <= std::min(n_r, *max_e - ml); ++mr) {
      count += photon_states_in_range(photon_cap, *max_e - ml - mr);
    }
  }
  return count;
}

BasisIndex::BasisIndex(int n_l, int n_r, int photon_cap, std::optional<int> max_e,
                       std::size_t dimension_cap)
    : n_l_(n_l), n_r_(n_r), photon_cap_(photon_cap) {
  if (n_l < 1) throw std::invalid_argument("N_l must be >= 1, got " + std::to_string(n_l));
  if (n_r < 1) throw std::invalid_argument("N_r must be >= 1, got " + std::to_string(n_r));
  if (photon_cap < 0)
    throw std::invalid_argument("photon_cap must be >= 0, got " + std::to_string(photon_cap));
  if (max_e && *max_e < 0)
    throw std::invalid_argument("max_total_excitation must be >= 0, got " +
                                std::to_string(*max_e));

  const int full_e = n_l + n_r + photon_cap;
  max_e_ = max_e ? std::min(*max_e, full_e) : full_e;

  const std::uint64_t count = count_states(n_l, n_r, photon_cap, max_e_);
  if (count > dimension_cap) throw DimensionError(count, dimension_cap);

  states_.reserve(count);
  lookup_.reserve(count);
  blocks_.resize(max_e_ + 1);
  for (int e = 0; e <= max_e_; ++e) {
    blocks_[e].offset = states_.size();
    for (int ml = 0; ml <= std::min(n_l, e); ++ml) {
      for (int mr = 0; mr <= std::min(n_r, e - ml); ++mr) {
        const int n = e - ml - mr;
        if (n > photon_cap) continue;
        lookup_.emplace(key({ml, mr, n}), states_.size());
        states_.push_back({ml, mr, n});
      }
    }
    blocks_[e].size = states_.size() - blocks_[e].offset;
  }
}

std::uint64_t BasisIndex::key(const Excitation& e) {
  return (static_cast<std::uint64_t>(e.m_l) << 42) | (static_cast<std::uint64_t>(e.m_r) << 21) |
         static_cast<std::uint64_t>(e.n_ph);
}

std::optional<std::size_t> BasisIndex::find(const Excitation& e) const {
  if (e.m_l < 0 || e.m_r < 0 || e.n_ph < 0) return std::nullopt;
  auto it = lookup_.find(key(e));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t BasisIndex::index_of(const Excitation& e) const {
  if (e.m_l < 0 || e.m_l > n_l_)
    throw std::out_of_range("m_l = " + std::to_string(e.m_l) + " outside [0, " +
                            std::to_string(n_l_) + "]");
  if (e.m_r < 0 || e.m_r > n_r_)
    throw std::out_of_range("m_r = " + std::to_string(e.m_r) + " outside [0, " +
                            std::to_string(n_r_) + "]");
  if (e.n_ph < 0 || e.n_ph > photon_cap_)
    throw std::out_of_range("n_ph = " + std::to_string(e.n_ph) + " outside [0, " +
                            std::to_string(photon_cap_) + "]");
  auto idx = find(e);
  if (!idx)
    throw std::out_of_range("total excitation " + std::to_string(e.total()) +
                            " exceeds basis maximum " + std::to_string(max_e_));
  return *idx;
}

BlockRange BasisIndex::block(int total) const {
  if (total < 0 || total > max_e_) return {states_.size(), 0};
  return blocks_[total];
}

BasisPtr build_basis(int n_l, int n_r, int photon_cap, std::optional<int> max_e,
                     std::size_t dimension_cap) {
  return std::make_shared<const BasisIndex>(n_l, n_r, photon_cap, max_e, dimension_cap);
}

// ---------------------------------------------------------------------------

StateVector::StateVector(BasisPtr basis) : basis_(std::move(basis)) {
  if (!basis_) throw std::invalid_argument("StateVector requires a basis");
  amps_ = Vector::Zero(static_cast<Eigen::Index>(basis_->size()));
}

StateVector::StateVector(BasisPtr basis, Vector amplitudes)
    : basis_(std::move(basis)), amps_(std::move(amplitudes)) {
  if (!basis_) throw std::invalid_argument("StateVector requires a basis");
  if (static_cast<std::size_t>(amps_.size()) != basis_->size())
    throw std::invalid_argument("amplitude count " + std::to_string(amps_.size()) +
                                " does not match basis size " +
                                std::to_string(basis_->size()));
}

cplx StateVector::amplitude(const Excitation& e) const {
  auto idx = basis_->find(e);
  return idx ? amps_[static_cast<Eigen::Index>(*idx)] : cplx{};
}

void StateVector::normalize() {
  const double n = norm();
  if (n == 0.0) throw DomainError("cannot normalize the zero vector");
  amps_ /= n;
}

cplx StateVector::inner(const StateVector& other) const {
  if (basis_ != other.basis_) throw std::invalid_argument("inner product across bases");
  return amps_.dot(other.amps_);
}

std::vector<int> StateVector::support_blocks() const {
  std::vector<int> out;
  for (int e = 0; e < basis_->num_blocks(); ++e) {
    const BlockRange r = basis_->block(e);
    if (r.empty()) continue;
    auto seg = amps_.segment(static_cast<Eigen::Index>(r.offset), static_cast<Eigen::Index>(r.size));
    if ((seg.array() != cplx{}).any()) out.push_back(e);
  }
  return out;
}

std::optional<int> StateVector::support_block() const {
  auto blocks = support_blocks();
  if (blocks.size() != 1) return std::nullopt;
  return blocks.front();
}

StateVector product_state(const BasisPtr& basis, int m_l, int m_r, int n_ph) {
  StateVector psi(basis);
  psi.amplitudes()[static_cast<Eigen::Index>(basis->index_of({m_l, m_r, n_ph}))] = 1.0;
  return psi;
}

// ---------------------------------------------------------------------------

FullSpinBasis::FullSpinBasis(int n_l, int n_r, int photon_cap)
    : n_l_(n_l), n_r_(n_r), photon_cap_(photon_cap) {
  if (n_l < 0 || n_r < 0 || n_l + n_r < 1)
    throw std::invalid_argument("full spin basis needs at least one atom");
  if (n_l + n_r > kMaxAtoms)
    throw DimensionError(std::size_t{1} << (n_l + n_r), std::size_t{1} << kMaxAtoms);
  if (photon_cap < 0) throw std::invalid_argument("photon_cap must be >= 0");
}

std::size_t FullSpinBasis::index(std::uint32_t spin_bits, int n_ph) const {
  return static_cast<std::size_t>(n_ph) * spin_states() + spin_bits;
}

int FullSpinBasis::atom_bit(Side side, int j) const {
  return side == Side::left ? j : n_l_ + j;
}

Vector FullSpinBasis::embed(const Excitation& e) const {
  if (e.m_l < 0 || e.m_l > n_l_ || e.m_r < 0 || e.m_r > n_r_ || e.n_ph < 0 ||
      e.n_ph > photon_cap_)
    throw std::out_of_range("excitation outside the full spin basis");
  const std::uint32_t left_mask = (1u << n_l_) - 1u;
  Vector out = Vector::Zero(static_cast<Eigen::Index>(size()));
  std::size_t count = 0;
  for (std::uint32_t bits = 0; bits < spin_states(); ++bits) {
    if (std::popcount(bits & left_mask) == e.m_l && std::popcount(bits >> n_l_) == e.m_r) {
      out[static_cast<Eigen::Index>(index(bits, e.n_ph))] = 1.0;
      ++count;
    }
  }
  out /= std::sqrt(static_cast<double>(count));
  return out;
}

Vector FullSpinBasis::embed(const StateVector& psi) const {
  const BasisIndex& b = psi.basis();
  if (b.n_l_atoms() != n_l_ || b.n_r_atoms() != n_r_)
    throw std::invalid_argument("atom counts differ between bases");
  Vector out = Vector::Zero(static_cast<Eigen::Index>(size()));
  for (std::size_t i = 0; i < b.size(); ++i) {
    const cplx c = psi.amplitudes()[static_cast<Eigen::Index>(i)];
    if (c != cplx{}) out += c * embed(b.state(i));
  }
  return out;
}

Vector FullSpinBasis::fourier_excitation(Side side, int k) const {
  const int ns = atoms(side);
  if (ns < 1) throw std::invalid_argument("ensemble has no atoms");
  Vector out = Vector::Zero(static_cast<Eigen::Index>(size()));
  for (int j = 0; j < ns; ++j) {
    const double phase = 2.0 * std::numbers::pi * j * k / ns;
    out[static_cast<Eigen::Index>(index(1u << atom_bit(side, j), 0))] = std::polar(1.0, phase);
  }
  return out / std::sqrt(static_cast<double>(ns));
}

SparseMatrix FullSpinBasis::fourier_lower(Side side, int k) const {
  const int ns = atoms(side);
  if (ns < 1) throw std::invalid_argument("ensemble has no atoms");
  std::vector<Eigen::Triplet<cplx>> trips;
  for (int n = 0; n <= photon_cap_; ++n) {
    for (std::uint32_t bits = 0; bits < spin_states(); ++bits) {
      for (int j = 0; j < ns; ++j) {
        const std::uint32_t mask = 1u << atom_bit(side, j);
        if (!(bits & mask)) continue;
        const cplx w = std::polar(1.0 / std::sqrt(static_cast<double>(ns)),
                                  2.0 * std::numbers::pi * j * k / ns);
        trips.emplace_back(static_cast<int>(index(bits & ~mask, n)),
                           static_cast<int>(index(bits, n)), w);
      }
    }
  }
  SparseMatrix m(static_cast<Eigen::Index>(size()), static_cast<Eigen::Index>(size()));
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

SparseMatrix FullSpinBasis::collective_lower(Side side) const {
  if (atoms(side) == 0)
    return SparseMatrix(static_cast<Eigen::Index>(size()), static_cast<Eigen::Index>(size()));
  return fourier_lower(side, 0) * std::sqrt(static_cast<double>(atoms(side)));
}

SparseMatrix FullSpinBasis::collective_raise(Side side) const {
  return SparseMatrix(collective_lower(side).adjoint());
}

SparseMatrix FullSpinBasis::collective_inversion(Side side) const {
  std::vector<Eigen::Triplet<cplx>> trips;
  for (int n = 0; n <= photon_cap_; ++n) {
    for (std::uint32_t bits = 0; bits < spin_states(); ++bits) {
      int excited = 0;
      for (int j = 0; j < atoms(side); ++j) excited += (bits >> atom_bit(side, j)) & 1u;
      const int i = static_cast<int>(index(bits, n));
      trips.emplace_back(i, i, static_cast<double>(2 * excited - atoms(side)));
    }
  }
  SparseMatrix m(static_cast<Eigen::Index>(size()), static_cast<Eigen::Index>(size()));
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

SparseMatrix FullSpinBasis::photon_lower() const {
  std::vector<Eigen::Triplet<cplx>> trips;
  for (int n = 1; n <= photon_cap_; ++n) {
    for (std::uint32_t bits = 0; bits < spin_states(); ++bits) {
      trips.emplace_back(static_cast<int>(index(bits, n - 1)), static_cast<int>(index(bits, n)),
                         std::sqrt(static_cast<double>(n)));
    }
  }
  SparseMatrix m(static_cast<Eigen::Index>(size()), static_cast<Eigen::Index>(size()));
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

SparseMatrix FullSpinBasis::hamiltonian(double omega_l, double omega_r, double omega_ph,
                                        double g_l, double g_r) const {
  const SparseMatrix a = photon_lower();
  const SparseMatrix ad = a.adjoint();
  SparseMatrix h = 0.5 * omega_l * collective_inversion(Side::left) +
                   0.5 * omega_r * collective_inversion(Side::right) +
                   omega_ph * SparseMatrix(ad * a);
  // a S_+ has the spin raising act first; both factors commute, and the
  // photon truncation drops the same pairs in either order here because
  // spin configurations are never truncated.
  SparseMatrix coupling = SparseMatrix(a * (g_l * collective_raise(Side::left) +
                                            g_r * collective_raise(Side::right)));
  h += coupling + SparseMatrix(coupling.adjoint());
  return h;
}

}  // namespace qet
