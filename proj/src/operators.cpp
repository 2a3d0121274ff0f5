#include "qet/operators.hpp"

#include <cmath>
#include <numbers>

namespace qet {

namespace {

using Triplets = std::vector<Eigen::Triplet<cplx>>;

SparseMatrix from_triplets(std::size_t dim, const Triplets& trips) {
  SparseMatrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  m.setFromTriplets(trips.begin(), trips.end());
  m.makeCompressed();
  return m;
}

}  // namespace

CollectiveOps build_collective_ops(const BasisPtr& basis) {
  const BasisIndex& b = *basis;
  Triplets sp_l, sz_l, sp_r, sz_r, ad;
  sp_l.reserve(b.size());
  sp_r.reserve(b.size());
  ad.reserve(b.size());
  const int nl = b.n_l_atoms();
  const int nr = b.n_r_atoms();

  for (std::size_t i = 0; i < b.size(); ++i) {
    const Excitation& s = b.state(i);
    const int col = static_cast<int>(i);
    sz_l.emplace_back(col, col, static_cast<double>(2 * s.m_l - nl));
    sz_r.emplace_back(col, col, static_cast<double>(2 * s.m_r - nr));
    if (auto j = b.find({s.m_l + 1, s.m_r, s.n_ph})) {
      sp_l.emplace_back(static_cast<int>(*j), col,
                        std::sqrt(static_cast<double>((nl - s.m_l) * (s.m_l + 1))));
    }
    if (auto j = b.find({s.m_l, s.m_r + 1, s.n_ph})) {
      sp_r.emplace_back(static_cast<int>(*j), col,
                        std::sqrt(static_cast<double>((nr - s.m_r) * (s.m_r + 1))));
    }
    if (auto j = b.find({s.m_l, s.m_r, s.n_ph + 1})) {
      ad.emplace_back(static_cast<int>(*j), col, std::sqrt(static_cast<double>(s.n_ph + 1)));
    }
  }

  CollectiveOps ops;
  ops.basis = basis;
  ops.s_plus_l = from_triplets(b.size(), sp_l);
  ops.s_minus_l = SparseMatrix(ops.s_plus_l.adjoint());
  ops.s_z_l = from_triplets(b.size(), sz_l);
  ops.s_plus_r = from_triplets(b.size(), sp_r);
  ops.s_minus_r = SparseMatrix(ops.s_plus_r.adjoint());
  ops.s_z_r = from_triplets(b.size(), sz_r);
  ops.a_dagger = from_triplets(b.size(), ad);
  ops.a = SparseMatrix(ops.a_dagger.adjoint());
  return ops;
}

double mixing_angle(double g_l, double g_r, int n_l, int n_r) {
  if (g_l < 0.0 || g_r < 0.0)
    throw DomainError("couplings must be nonnegative (phases are absorbed into the basis)");
  const double x = g_l * std::sqrt(static_cast<double>(n_l));
  const double y = g_r * std::sqrt(static_cast<double>(n_r));
  if (x == 0.0 && y == 0.0) throw DomainError("mixing angle undefined: g_l = g_r = 0");
  return std::atan2(x, y);
}

double MixingOps::collective_coupling() const {
  return std::sqrt(g_l * g_l * n_l + g_r * g_r * n_r);
}

namespace {

MixingOps assemble(const CollectiveOps& ops, double alpha, double g_l, double g_r) {
  const int nl = ops.basis->n_l_atoms();
  const int nr = ops.basis->n_r_atoms();
  // atan2 returns pi/2 exactly when g_r = 0; keep that endpoint exact.
  const bool right_off = alpha == std::numbers::pi / 2;
  const double c = right_off ? 0.0 : std::cos(alpha);
  const double s = right_off ? 1.0 : std::sin(alpha);
  const double inv_l = 1.0 / std::sqrt(static_cast<double>(nl));
  const double inv_r = 1.0 / std::sqrt(static_cast<double>(nr));

  MixingOps m;
  m.alpha = alpha;
  m.g_l = g_l;
  m.g_r = g_r;
  m.n_l = nl;
  m.n_r = nr;
  m.dark = (c * inv_l) * ops.s_minus_l - (s * inv_r) * ops.s_minus_r;
  m.bright = (s * inv_l) * ops.s_minus_l + (c * inv_r) * ops.s_minus_r;
  m.commutator = (c * s) *
                 ((1.0 / nl) * ops.s_z_l - (1.0 / nr) * ops.s_z_r);
  m.dark.makeCompressed();
  m.bright.makeCompressed();
  m.commutator.makeCompressed();
  return m;
}

}  // namespace

MixingOps build_mixing_ops(const CollectiveOps& ops, double g_l, double g_r) {
  const double alpha =
      mixing_angle(g_l, g_r, ops.basis->n_l_atoms(), ops.basis->n_r_atoms());
  return assemble(ops, alpha, g_l, g_r);
}

MixingOps build_mixing_ops_at_angle(const CollectiveOps& ops, double alpha) {
  if (!(alpha >= 0.0 && alpha <= std::numbers::pi / 2 + 1e-15))
    throw DomainError("mixing angle must lie in [0, pi/2]");
  const double g_l = std::sin(alpha) / std::sqrt(static_cast<double>(ops.basis->n_l_atoms()));
  const double c = alpha == std::numbers::pi / 2 ? 0.0 : std::cos(alpha);
  const double g_r = c / std::sqrt(static_cast<double>(ops.basis->n_r_atoms()));
  return assemble(ops, alpha, g_l, g_r);
}

double commutator_deficit(const MixingOps& mops, const StateVector& psi) {
  return (mops.commutator * psi.amplitudes()).norm();
}

double commutator_deficit_direct(const MixingOps& mops, const StateVector& psi) {
  const SparseMatrix dark_dag = mops.dark.adjoint();
  const Vector& v = psi.amplitudes();
  const Vector lhs = dark_dag * (mops.bright * v);
  const Vector rhs = mops.bright * (dark_dag * v);
  return (lhs - rhs).norm();
}

}  // namespace qet
