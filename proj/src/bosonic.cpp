#include "qet/bosonic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qet/basis.hpp"
#include "qet/dynamics.hpp"
#include "qet/linalg.hpp"
#include "qet/parallel.hpp"

namespace qet {

double BosonicParams::xi() const {
  const double d = 0.5 * (omega - epsilon);
  return std::sqrt(d * d + g * g);
}

double BosonicParams::mean_frequency() const { return 0.5 * (omega + epsilon); }

double BosonicParams::polariton_angle() const { return std::atan2(2.0 * g, omega - epsilon); }

PolaritonTransform polariton_transform(const BosonicParams& p) {
  PolaritonTransform t;
  t.angle = p.polariton_angle();
  t.upper = p.mean_frequency() + p.xi();
  t.lower = p.mean_frequency() - p.xi();
  t.dark = p.epsilon;
  const double c = std::cos(0.5 * t.angle);
  const double s = std::sin(0.5 * t.angle);
  t.rotation << c, s, -s, c;
  return t;
}

ModeAmplitudes analytic_amplitudes(const BosonicParams& p, double t) {
  const double vt = p.polariton_angle();
  const double xi = p.xi();
  const double theta = p.mean_frequency();
  const double s2 = std::pow(std::sin(0.5 * vt), 2);
  const double c2 = std::pow(std::cos(0.5 * vt), 2);
  const double sa = std::sin(p.alpha);
  const double ca = std::cos(p.alpha);

  const cplx dark = std::polar(1.0, -p.epsilon * t);
  const cplx upper = std::polar(1.0, -(theta + xi) * t);
  const cplx lower = std::polar(1.0, -(theta - xi) * t);

  ModeAmplitudes m;
  m.left = ca * ca * dark + s2 * sa * sa * upper + c2 * sa * sa * lower;
  m.right = (-dark + s2 * upper + c2 * lower) * (0.5 * std::sin(2.0 * p.alpha));
  m.photon = -kI * std::sin(vt) * sa * std::polar(1.0, -theta * t) * std::sin(xi * t);
  return m;
}

ModeAmplitudes mode_rotation_amplitudes(const BosonicParams& p, double t) {
  // Single-particle matrix in the (b_l, b_r, a) basis.
  DenseMatrix m = DenseMatrix::Zero(3, 3);
  m(0, 0) = p.epsilon;
  m(1, 1) = p.epsilon;
  m(2, 2) = p.omega;
  m(0, 2) = m(2, 0) = p.g * std::sin(p.alpha);
  m(1, 2) = m(2, 1) = p.g * std::cos(p.alpha);
  const Vector v = hermitian_propagator(m, t).col(0);
  return {v[0], v[1], v[2]};
}

double coherent_tail(double eta, int cap) {
  const double x = eta * eta;
  double term = 1.0;  // x^k / k!
  for (int k = 1; k <= cap; ++k) term *= x / k;
  // Sum the tail directly rather than 1 - head to keep relative accuracy.
  double tail = 0.0;
  for (int k = cap + 1; k < cap + 400; ++k) {
    term *= x / k;
    tail += term;
    if (term < 1e-300 || term < 1e-18 * tail) break;
  }
  return std::exp(-x) * tail;
}

namespace {

struct ModeOps {
  SparseMatrix b_l, b_r, a;
};

ModeOps boson_ops(const BasisIndex& b) {
  std::vector<Eigen::Triplet<cplx>> tl, tr, ta;
  for (std::size_t i = 0; i < b.size(); ++i) {
    const Excitation& s = b.state(i);
    const int col = static_cast<int>(i);
    if (s.m_l > 0)
      tl.emplace_back(static_cast<int>(b.index_of({s.m_l - 1, s.m_r, s.n_ph})), col,
                      std::sqrt(static_cast<double>(s.m_l)));
    if (s.m_r > 0)
      tr.emplace_back(static_cast<int>(b.index_of({s.m_l, s.m_r - 1, s.n_ph})), col,
                      std::sqrt(static_cast<double>(s.m_r)));
    if (s.n_ph > 0)
      ta.emplace_back(static_cast<int>(b.index_of({s.m_l, s.m_r, s.n_ph - 1})), col,
                      std::sqrt(static_cast<double>(s.n_ph)));
  }
  const auto n = static_cast<Eigen::Index>(b.size());
  ModeOps ops{SparseMatrix(n, n), SparseMatrix(n, n), SparseMatrix(n, n)};
  ops.b_l.setFromTriplets(tl.begin(), tl.end());
  ops.b_r.setFromTriplets(tr.begin(), tr.end());
  ops.a.setFromTriplets(ta.begin(), ta.end());
  return ops;
}

double mode_purity(const Vector& psi, const BasisIndex& b, int which) {
  const int cap = b.photon_cap();
  const int dim = cap + 1;
  DenseMatrix phi = DenseMatrix::Zero(dim, dim * dim);
  for (std::size_t i = 0; i < b.size(); ++i) {
    const Excitation& s = b.state(i);
    int row = 0, col = 0;
    switch (which) {
      case 0: row = s.m_l; col = s.m_r * dim + s.n_ph; break;
      case 1: row = s.m_r; col = s.m_l * dim + s.n_ph; break;
      default: row = s.n_ph; col = s.m_l * dim + s.m_r; break;
    }
    phi(row, col) = psi[static_cast<Eigen::Index>(i)];
  }
  const DenseMatrix rho = phi * phi.adjoint();
  return rho.squaredNorm();
}

}  // namespace

CoherentEvolution coherent_evolution_numeric(const BosonicParams& p, int fock_cap,
                                             std::span<const double> t_grid,
                                             double truncation_tolerance) {
  if (fock_cap < 1) throw std::invalid_argument("fock_cap must be >= 1");
  CoherentEvolution out;
  out.truncation_error = coherent_tail(p.eta, fock_cap);
  if (out.truncation_error > truncation_tolerance)
    throw DomainError("coherent-state truncation leakage " + std::to_string(out.truncation_error) +
                      " exceeds tolerance; enlarge fock_cap beyond " + std::to_string(fock_cap));

  // Per-mode cap and total-quanta cut coincide.
  const BasisIndex basis(fock_cap, fock_cap, fock_cap, fock_cap);
  const ModeOps ops = boson_ops(basis);
  const SparseMatrix ad = ops.a.adjoint();
  const SparseMatrix n_l = SparseMatrix(ops.b_l.adjoint()) * ops.b_l;
  const SparseMatrix n_r = SparseMatrix(ops.b_r.adjoint()) * ops.b_r;
  const SparseMatrix n_a = ad * ops.a;
  const SparseMatrix hop = p.g * (std::sin(p.alpha) * SparseMatrix(ad * ops.b_l) +
                                  std::cos(p.alpha) * SparseMatrix(ad * ops.b_r));
  const SparseMatrix h = p.omega * n_a + p.epsilon * (n_l + n_r) + hop +
                         SparseMatrix(hop.adjoint());
  const SparseMatrix dark = std::cos(p.alpha) * ops.b_l - std::sin(p.alpha) * ops.b_r;

  Vector psi0 = Vector::Zero(static_cast<Eigen::Index>(basis.size()));
  double amp = std::exp(-0.5 * p.eta * p.eta);
  for (int m = 0; m <= fock_cap; ++m) {
    if (m > 0) amp *= p.eta / std::sqrt(static_cast<double>(m));
    psi0[static_cast<Eigen::Index>(basis.index_of({m, 0, 0}))] = amp;
  }
  psi0.normalize();

  struct BlockEig {
    BlockRange range;
    DenseMatrix vectors;
    Eigen::VectorXd values;
    Vector coeffs;  // V^dagger psi0 restricted to the block
  };
  std::vector<BlockEig> blocks;
  for (int e = 0; e <= fock_cap; ++e) {
    const BlockRange r = basis.block(e);
    const auto off = static_cast<Eigen::Index>(r.offset);
    const auto n = static_cast<Eigen::Index>(r.size);
    if (psi0.segment(off, n).isZero(0.0)) continue;
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es{DenseMatrix(h.block(off, off, n, n))};
    blocks.push_back({r, es.eigenvectors(), es.eigenvalues(),
                      es.eigenvectors().adjoint() * psi0.segment(off, n)});
  }

  double quanta0 = 0.0, dark0 = 0.0;
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    const double t = t_grid[k];
    Vector psi = Vector::Zero(psi0.size());
    for (const BlockEig& b : blocks) {
      Vector c = b.coeffs;
      for (Eigen::Index i = 0; i < c.size(); ++i) c[i] *= std::polar(1.0, -b.values[i] * t);
      psi.segment(static_cast<Eigen::Index>(b.range.offset),
                  static_cast<Eigen::Index>(b.range.size)) = b.vectors * c;
    }

    CoherentSample s;
    s.t = t;
    s.b_l = psi.dot(ops.b_l * psi);
    s.b_r = psi.dot(ops.b_r * psi);
    s.a = psi.dot(ops.a * psi);
    s.photon_number = psi.dot(n_a * psi).real();
    s.total_quanta = s.photon_number + psi.dot((n_l + n_r) * psi).real();
    s.dark_quanta = (dark * psi).squaredNorm();
    s.purity_l = mode_purity(psi, basis, 0);
    s.purity_r = mode_purity(psi, basis, 1);
    s.purity_ph = mode_purity(psi, basis, 2);

    const ModeAmplitudes f = analytic_amplitudes(p, t);
    s.deviation = std::max({std::abs(s.b_l - p.eta * f.left), std::abs(s.b_r - p.eta * f.right),
                            std::abs(s.a - p.eta * f.photon)});
    if (k == 0) {
      quanta0 = s.total_quanta;
      dark0 = s.dark_quanta;
    }
    out.max_deviation = std::max(out.max_deviation, s.deviation);
    out.max_quanta_drift = std::max(out.max_quanta_drift, std::abs(s.total_quanta - quanta0));
    out.max_dark_drift = std::max(out.max_dark_drift, std::abs(s.dark_quanta - dark0));
    out.min_purity = std::min({out.min_purity, s.purity_l, s.purity_r, s.purity_ph});
    out.samples.push_back(s);
  }
  return out;
}

std::vector<double> spin_coherent_amplitudes(int n_atoms, double eta) {
  if (n_atoms < 1) throw std::invalid_argument("spin coherent state needs N >= 1");
  const double x = eta / std::sqrt(static_cast<double>(n_atoms));
  const double c = std::cos(x);
  const double s = std::sin(x);
  std::vector<double> amps(static_cast<std::size_t>(n_atoms + 1), 0.0);
  if (s == 0.0) {
    amps[0] = 1.0;
    return amps;
  }
  const double log_c = std::log(std::abs(c));
  const double log_s = std::log(std::abs(s));
  for (int m = 0; m <= n_atoms; ++m) {
    const double log_binom =
        std::lgamma(n_atoms + 1.0) - std::lgamma(m + 1.0) - std::lgamma(n_atoms - m + 1.0);
    double v = std::exp(0.5 * log_binom + (n_atoms - m) * log_c + m * log_s);
    if (c < 0.0 && (n_atoms - m) % 2 != 0) v = -v;
    if (s < 0.0 && m % 2 != 0) v = -v;
    amps[static_cast<std::size_t>(m)] = v;
  }
  return amps;
}

ConvergenceReport finite_N_convergence(const BosonicParams& p, std::span<const int> n_list,
                                       std::span<const double> t_grid, int photon_cap,
                                       int threads) {
  if (t_grid.size() < 2 || t_grid.front() != 0.0)
    throw std::invalid_argument("time grid must start at 0 and have at least two points");
  const double dt = t_grid[1] - t_grid[0];
  for (std::size_t k = 1; k < t_grid.size(); ++k)
    if (std::abs(t_grid[k] - k * dt) > 1e-9 * std::max(1.0, t_grid.back()))
      throw std::invalid_argument("time grid must be uniform");
  const double total_time = t_grid.back();

  ConvergenceReport report;
  report.rows.resize(n_list.size());
  std::vector<double> single(n_list.size(), 0.0);

  parallel_for(n_list.size(), threads, [&](std::size_t idx) {
    const int n = n_list[idx];
    ModelParams mp;
    mp.n_l = n;
    mp.n_r = n;
    mp.epsilon = p.epsilon;
    mp.omega_ph = p.omega;
    mp.g_l = p.g * std::sin(p.alpha) / std::sqrt(static_cast<double>(n));
    mp.g_r = p.g * std::cos(p.alpha) / std::sqrt(static_cast<double>(n));
    mp.picture = Picture::full;
    const CouplingSchedule sched = CouplingSchedule::constant(total_time, mp.g_l, mp.g_r);

    EvolveOptions opt;
    opt.dt = dt;
    opt.observables = {Observable::left_lowering};
    opt.tracked_dark.clear();

    // Coherent input: cut the Dicke ladder where the tail weight is negligible;
    // the photon cap matches the cut so the dynamics itself is not truncated.
    const std::vector<double> amps = spin_coherent_amplitudes(n, p.eta);
    int cut = n;
    double tail = 0.0;
    while (cut > 0 && tail + amps[cut] * amps[cut] < 1e-26) {
      tail += amps[cut] * amps[cut];
      --cut;
    }
    mp.photon_cap = std::max(cut, photon_cap);
    const BasisPtr basis = build_basis(n, n, mp.photon_cap, cut);
    StateVector psi(basis);
    for (int m = 0; m <= cut; ++m)
      psi.amplitudes()[static_cast<Eigen::Index>(basis->index_of({m, 0, 0}))] = amps[m];
    psi.normalize();

    const EvolutionResult r = evolve(mp, sched, psi, opt);
    double dev = 0.0;
    for (std::size_t k = 0; k < r.times.size(); ++k) {
      const ModeAmplitudes f = analytic_amplitudes(p, r.times[k]);
      dev = std::max(dev, std::abs(r.left_lowering[k] - p.eta * f.left));
    }
    report.rows[idx] = {n, dev};

    // One excitation: the E = 1 block is the single-particle problem exactly,
    // up to the ground-state energy -eps N carried by the full picture.
    ModelParams one = mp;
    one.photon_cap = 1;
    const BasisPtr b1 = build_basis(n, n, 1, 1);
    EvolveOptions opt1 = opt;
    opt1.observables.clear();
    opt1.keep_snapshots = true;
    const EvolutionResult r1 = evolve(one, sched, product_state(b1, 1, 0, 0), opt1);
    const double ground = -p.epsilon * n;
    double worst = 0.0;
    for (std::size_t k = 0; k < r1.times.size(); ++k) {
      const cplx phase = std::polar(1.0, ground * r1.times[k]);
      const StateVector& s = r1.snapshots[k];
      const ModeAmplitudes f = analytic_amplitudes(p, r1.times[k]);
      worst = std::max({worst, std::abs(phase * s.amplitude({1, 0, 0}) - f.left),
                        std::abs(phase * s.amplitude({0, 1, 0}) - f.right),
                        std::abs(phase * s.amplitude({0, 0, 1}) - f.photon)});
    }
    single[idx] = worst;
  });

  report.single_excitation_deviation = *std::max_element(single.begin(), single.end());
  for (std::size_t i = 1; i < report.rows.size(); ++i)
    if (!(report.rows[i].max_deviation < report.rows[i - 1].max_deviation)) report.monotone = false;
  return report;
}

}  // namespace qet
