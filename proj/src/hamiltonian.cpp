#include "qet/hamiltonian.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace qet {

double ModelParams::splitting(Side side, int n_ph) const {
  if (!include_stark) return epsilon;
  return epsilon + stark.quantized * n_ph - (side == Side::left ? stark.left : stark.right);
}

void ModelParams::validate() const {
  std::ostringstream err;
  if (n_l < 1) err << "model.n_l must be >= 1; ";
  if (n_r < 1) err << "model.n_r must be >= 1; ";
  if (photon_cap < 0) err << "model.photon_cap must be >= 0; ";
  if (!(g_l >= 0.0)) err << "model.g_l must be >= 0; ";
  if (!(g_r >= 0.0)) err << "model.g_r must be >= 0; ";
  for (double v : {epsilon, omega_ph, g_l, g_r, stark.quantized, stark.left, stark.right})
    if (!std::isfinite(v)) {
      err << "model parameters must be finite; ";
      break;
    }
  const std::string msg = err.str();
  if (!msg.empty()) throw std::invalid_argument(msg.substr(0, msg.size() - 2));
}

DenseMatrix HamiltonianMatrix::block(int total) const {
  const BlockRange r = basis->block(total);
  const auto off = static_cast<Eigen::Index>(r.offset);
  const auto n = static_cast<Eigen::Index>(r.size);
  return DenseMatrix(matrix.block(off, off, n, n));
}

void HamiltonianMatrix::write_triplets(std::ostream& os) const {
  Eigen::SparseMatrix<cplx, Eigen::RowMajor> rm(matrix);
  os << std::scientific << std::setprecision(16);
  for (Eigen::Index r = 0; r < rm.outerSize(); ++r) {
    for (Eigen::SparseMatrix<cplx, Eigen::RowMajor>::InnerIterator it(rm, r); it; ++it) {
      os << it.row() << ' ' << it.col() << ' ' << it.value().real() << ' ' << it.value().imag()
         << '\n';
    }
  }
}

SparseMatrix coupling_term(const BasisIndex& basis, Side side) {
  const int n_atoms = basis.n_atoms(side);
  std::vector<Eigen::Triplet<cplx>> trips;
  trips.reserve(2 * basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Excitation& s = basis.state(i);
    const int m = side == Side::left ? s.m_l : s.m_r;
    if (m >= n_atoms || s.n_ph < 1) continue;
    Excitation t = s;
    (side == Side::left ? t.m_l : t.m_r) += 1;
    t.n_ph -= 1;
    // Same total excitation, so the target is always inside the basis.
    const auto j = static_cast<int>(basis.index_of(t));
    const double v = std::sqrt(static_cast<double>((n_atoms - m) * (m + 1)) * s.n_ph);
    trips.emplace_back(j, static_cast<int>(i), v);
    trips.emplace_back(static_cast<int>(i), j, v);
  }
  SparseMatrix h(static_cast<Eigen::Index>(basis.size()), static_cast<Eigen::Index>(basis.size()));
  h.setFromTriplets(trips.begin(), trips.end());
  h.makeCompressed();
  return h;
}

SparseMatrix static_term(const ModelParams& p, const BasisIndex& basis) {
  std::vector<Eigen::Triplet<cplx>> trips;
  trips.reserve(basis.size());
  const int nl = basis.n_l_atoms();
  const int nr = basis.n_r_atoms();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Excitation& s = basis.state(i);
    const double sz_l = 2.0 * s.m_l - nl;
    const double sz_r = 2.0 * s.m_r - nr;
    double d = 0.5 * p.splitting(Side::left, s.n_ph) * sz_l +
               0.5 * p.splitting(Side::right, s.n_ph) * sz_r + p.omega_ph * s.n_ph;
    if (p.picture == Picture::interaction)
      d -= p.epsilon * (0.5 * sz_l + 0.5 * sz_r + s.n_ph);
    const int k = static_cast<int>(i);
    trips.emplace_back(k, k, d);
  }
  SparseMatrix h(static_cast<Eigen::Index>(basis.size()), static_cast<Eigen::Index>(basis.size()));
  h.setFromTriplets(trips.begin(), trips.end());
  return h;
}

HamiltonianMatrix build_full_hamiltonian(const ModelParams& params, const CollectiveOps& ops) {
  params.validate();
  const BasisIndex& b = *ops.basis;
  if (b.n_l_atoms() != params.n_l || b.n_r_atoms() != params.n_r ||
      b.photon_cap() != params.photon_cap)
    throw std::invalid_argument("model parameters do not match the basis dimensions");
  HamiltonianMatrix h;
  h.basis = ops.basis;
  h.matrix = static_term(params, b) + params.g_l * coupling_term(b, Side::left) +
             params.g_r * coupling_term(b, Side::right);
  h.matrix.prune(cplx{0.0, 0.0});
  h.matrix.makeCompressed();
  return h;
}

HamiltonianMatrix build_interaction_hamiltonian(const MixingOps& mops, const CollectiveOps& ops) {
  const double g = mops.collective_coupling();
  const SparseMatrix bright_dag = mops.bright.adjoint();
  // Lowering factor applied first in each product (see CollectiveOps).
  HamiltonianMatrix h;
  h.basis = ops.basis;
  h.matrix = g * (SparseMatrix(bright_dag * ops.a) + SparseMatrix(ops.a_dagger * mops.bright));
  h.matrix.prune(cplx{0.0, 0.0});
  h.matrix.makeCompressed();
  return h;
}

// ---------------------------------------------------------------------------

ScheduledHamiltonian::ScheduledHamiltonian(ModelParams params, BasisPtr basis,
                                           CouplingSchedule schedule)
    : params_(std::move(params)), basis_(std::move(basis)), schedule_(std::move(schedule)) {
  params_.validate();
  if (basis_->n_l_atoms() != params_.n_l || basis_->n_r_atoms() != params_.n_r ||
      basis_->photon_cap() != params_.photon_cap)
    throw std::invalid_argument("model parameters do not match the basis dimensions");
  static_ = static_term(params_, *basis_);
  hop_l_ = coupling_term(*basis_, Side::left);
  hop_r_ = coupling_term(*basis_, Side::right);
  blocks_.resize(static_cast<std::size_t>(basis_->num_blocks()));
}

HamiltonianMatrix ScheduledHamiltonian::at(double t) const {
  const Couplings g = schedule_.at(t);
  HamiltonianMatrix h;
  h.basis = basis_;
  h.matrix = static_ + g.g_l * hop_l_ + g.g_r * hop_r_;
  h.matrix.prune(cplx{0.0, 0.0});
  h.matrix.makeCompressed();
  return h;
}

const ScheduledHamiltonian::BlockCache& ScheduledHamiltonian::cache(int total) const {
  if (total < 0 || total >= basis_->num_blocks())
    throw std::out_of_range("no excitation block " + std::to_string(total));
  std::lock_guard<std::mutex> lock(*cache_mutex_);
  auto& slot = blocks_[static_cast<std::size_t>(total)];
  if (!slot) {
    const BlockRange r = basis_->block(total);
    const auto off = static_cast<Eigen::Index>(r.offset);
    const auto n = static_cast<Eigen::Index>(r.size);
    slot = std::make_unique<BlockCache>();
    slot->diag = DenseMatrix(static_.block(off, off, n, n));
    slot->hop_l = DenseMatrix(hop_l_.block(off, off, n, n));
    slot->hop_r = DenseMatrix(hop_r_.block(off, off, n, n));
  }
  return *slot;
}

DenseMatrix ScheduledHamiltonian::block_at(int total, double t) const {
  const Couplings g = schedule_.at(t);
  const BlockCache& c = cache(total);
  return c.diag + g.g_l * c.hop_l + g.g_r * c.hop_r;
}

HamiltonianMatrix hamiltonian_at(const ModelParams& params, const BasisPtr& basis,
                                 const CouplingSchedule& schedule, double t) {
  return ScheduledHamiltonian(params, basis, schedule).at(t);
}

}  // namespace qet
