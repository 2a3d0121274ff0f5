#include "qet/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qet/linalg.hpp"
#include "qet/parallel.hpp"

namespace qet {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool wants(const EvolveOptions& o, Observable x) {
  return std::find(o.observables.begin(), o.observables.end(), x) != o.observables.end();
}

double population_where(const StateVector& psi, auto&& predicate) {
  double p = 0.0;
  const BasisIndex& b = psi.basis();
  for (std::size_t i = 0; i < b.size(); ++i)
    if (predicate(b.state(i))) p += std::norm(psi.amplitudes()[static_cast<Eigen::Index>(i)]);
  return p;
}

class BlockStepper {
 public:
  BlockStepper(const ScheduledHamiltonian& h, const EvolveOptions& o) : h_(h), opt_(o) {}

  /// Advances the segment of block `total` from t to t + dt.
  void advance(int total, Eigen::Ref<Vector> seg, double t, double dt, int depth,
               EvolutionResult& res) const {
    const DenseMatrix full = hermitian_propagator(h_.block_at(total, t + 0.5 * dt), dt);
    const DenseMatrix first = hermitian_propagator(h_.block_at(total, t + 0.25 * dt), 0.5 * dt);
    const DenseMatrix second = hermitian_propagator(h_.block_at(total, t + 0.75 * dt), 0.5 * dt);
    const Vector coarse = full * seg;
    const Vector fine = second * (first * seg);
    const double err = (coarse - fine).norm();
    if (err > opt_.step_tolerance && depth < opt_.max_refinement) {
      ++res.refined_steps;
      advance(total, seg, t, 0.5 * dt, depth + 1, res);
      advance(total, seg, t + 0.5 * dt, 0.5 * dt, depth + 1, res);
      return;
    }
    res.max_step_error = std::max(res.max_step_error, err);
    seg = fine;
  }

 private:
  const ScheduledHamiltonian& h_;
  const EvolveOptions& opt_;
};

}  // namespace

EvolutionResult evolve(const ModelParams& params, const CouplingSchedule& schedule,
                       const StateVector& initial, const EvolveOptions& options) {
  const BasisPtr& basis = initial.basis_ptr();
  const ScheduledHamiltonian ham(params, basis, schedule);
  if (std::abs(initial.norm() - 1.0) > 1e-10)
    throw std::invalid_argument("initial state must be normalized (norm " +
                                std::to_string(initial.norm()) + ")");
  if (options.record_every < 1) throw std::invalid_argument("record_every must be >= 1");

  const double total_time = schedule.total_time();
  double dt = options.dt;
  if (dt <= 0.0) dt = schedule.peak() > 0.0 ? 0.05 / schedule.peak() : total_time;
  const long steps = std::max(1L, static_cast<long>(std::ceil(total_time / dt - 1e-9)));
  const double h = total_time / static_cast<double>(steps);

  const std::vector<int> blocks = initial.support_blocks();

  const bool need_ops = wants(options, Observable::dark_population) ||
                        wants(options, Observable::exciton_number) ||
                        wants(options, Observable::left_lowering);
  std::optional<CollectiveOps> ops;
  if (need_ops) ops = build_collective_ops(basis);

  EvolutionResult res;
  res.steps = steps;
  res.dark_population.resize(options.tracked_dark.size());

  StateVector psi = initial;

  auto record = [&](double t) {
    res.times.push_back(t);
    if (options.keep_snapshots) res.snapshots.push_back(psi);
    const Couplings g = schedule.at(t);
    std::optional<MixingOps> mops;
    double alpha = kNaN;
    if (g.g_l > 0.0 || g.g_r > 0.0) {
      alpha = mixing_angle(g.g_l, g.g_r, params.n_l, params.n_r);
      if (ops && (wants(options, Observable::dark_population) ||
                  wants(options, Observable::exciton_number)))
        mops = build_mixing_ops(*ops, g.g_l, g.g_r);
    }
    if (wants(options, Observable::alpha)) res.alpha.push_back(alpha);
    if (wants(options, Observable::dark_population)) {
      for (std::size_t k = 0; k < options.tracked_dark.size(); ++k) {
        const int n = options.tracked_dark[k];
        double p = kNaN;
        if (mops && n <= basis->max_total_excitation())
          p = std::norm(build_dark_state(*mops, basis, n).state.inner(psi));
        res.dark_population[k].push_back(p);
      }
    }
    if (wants(options, Observable::photon_population))
      res.photon_population.push_back(
          population_where(psi, [](const Excitation& e) { return e.n_ph > 0; }));
    if (wants(options, Observable::left_population))
      res.left_population.push_back(
          population_where(psi, [](const Excitation& e) { return e.m_l > 0; }));
    if (wants(options, Observable::right_population))
      res.right_population.push_back(
          population_where(psi, [](const Excitation& e) { return e.m_r > 0; }));
    if (wants(options, Observable::exciton_number))
      res.exciton_number.push_back(mops ? (mops->dark * psi.amplitudes()).squaredNorm() : kNaN);
    if (wants(options, Observable::left_lowering)) {
      const Vector lowered = ops->s_minus_l * psi.amplitudes();
      res.left_lowering.push_back(psi.amplitudes().dot(lowered) /
                                  std::sqrt(static_cast<double>(params.n_l)));
    }
  };

  // Time-independent couplings: one exact propagator per block.
  std::vector<DenseMatrix> fixed;
  if (schedule.time_independent()) {
    for (int e : blocks) fixed.push_back(hermitian_propagator(ham.block_at(e, 0.0), h));
  }

  const BlockStepper stepper(ham, options);
  record(0.0);
  for (long k = 1; k <= steps; ++k) {
    const double t0 = (k - 1) * h;
    for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
      const BlockRange r = basis->block(blocks[bi]);
      auto seg = psi.amplitudes().segment(static_cast<Eigen::Index>(r.offset),
                                          static_cast<Eigen::Index>(r.size));
      if (!fixed.empty()) {
        seg = (fixed[bi] * seg).eval();
      } else {
        stepper.advance(blocks[bi], seg, t0, h, 0, res);
      }
    }
    const double drift = std::abs(psi.norm() - 1.0);
    res.norm_drift = std::max(res.norm_drift, drift);
    if (drift > options.norm_tolerance)
      throw IntegrationError("norm drift " + std::to_string(drift) + " at t = " +
                             std::to_string(k * h) + " exceeds tolerance " +
                             std::to_string(options.norm_tolerance) + "; reduce dt");
    if (k % options.record_every == 0 || k == steps) record(k == steps ? total_time : k * h);
  }
  res.final_state = psi;
  return res;
}

// ---------------------------------------------------------------------------

namespace {

void validate_density_matrix(const DenseMatrix& rho) {
  if (rho.rows() == 0 || rho.rows() != rho.cols())
    throw std::invalid_argument("stored state must be a nonempty square matrix");
  if (hermiticity_defect(rho) > 1e-10)
    throw std::invalid_argument("stored state is not Hermitian");
  const double tr = rho.trace().real();
  if (std::abs(tr - 1.0) > 1e-8)
    throw std::invalid_argument("stored state has trace " + std::to_string(tr) + ", expected 1");
  const double lo = min_eigenvalue(rho);
  if (lo < -1e-10)
    throw std::invalid_argument("stored state is not positive semidefinite (eigenvalue " +
                                std::to_string(lo) + ")");
}

/// Rows: m_r = 0..N_r; columns: (m_l, n_ph) pairs.
DenseMatrix right_ensemble_factor(const StateVector& psi) {
  const BasisIndex& b = psi.basis();
  const int cap = b.photon_cap();
  DenseMatrix phi = DenseMatrix::Zero(b.n_r_atoms() + 1, (b.n_l_atoms() + 1) * (cap + 1));
  for (std::size_t i = 0; i < b.size(); ++i) {
    const Excitation& s = b.state(i);
    phi(s.m_r, s.m_l * (cap + 1) + s.n_ph) = psi.amplitudes()[static_cast<Eigen::Index>(i)];
  }
  return phi;
}

}  // namespace

TransferResult transfer_experiment(const ModelParams& params, const CouplingSchedule& schedule,
                                   const DenseMatrix& stored, const TransferOptions& options) {
  params.validate();
  validate_density_matrix(stored);
  const int n_max = static_cast<int>(stored.rows()) - 1;
  if (n_max > std::min(params.n_l, params.n_r))
    throw std::invalid_argument("stored state needs n_max = " + std::to_string(n_max) +
                                " <= min(N_l, N_r) = " +
                                std::to_string(std::min(params.n_l, params.n_r)));

  const BasisPtr basis = build_basis(params.n_l, params.n_r, params.photon_cap, n_max);
  const CollectiveOps ops = build_collective_ops(basis);
  const Couplings g0 = schedule.at(0.0);
  const MixingOps start = build_mixing_ops(ops, g0.g_l, g0.g_r);

  EvolveOptions evo = options.evolve;
  if (!wants(evo, Observable::photon_population))
    evo.observables.push_back(Observable::photon_population);

  TransferResult out;
  std::vector<DenseMatrix> factors(static_cast<std::size_t>(n_max + 1));
  std::vector<double> photon_trace;
  for (int n = 0; n <= n_max; ++n) {
    const double weight = stored(n, n).real();
    if (weight == 0.0 && stored.row(n).isZero(0.0)) {
      factors[n] = DenseMatrix::Zero(params.n_r + 1, (params.n_l + 1) * (params.photon_cap + 1));
      continue;
    }
    const DarkState lifted = build_dark_state(start, basis, n);
    const EvolutionResult r = evolve(params, schedule, lifted.state, evo);
    out.norm_drift = std::max(out.norm_drift, r.norm_drift);
    factors[n] = right_ensemble_factor(*r.final_state);

    if (photon_trace.empty()) photon_trace.assign(r.photon_population.size(), 0.0);
    for (std::size_t k = 0; k < photon_trace.size(); ++k)
      photon_trace[k] += weight * r.photon_population[k];
    out.leakage.photon += weight * r.photon_population.back();
    out.leakage.left += weight * population_where(*r.final_state,
                                                  [](const Excitation& e) { return e.m_l > 0; });
  }
  if (!photon_trace.empty())
    out.leakage.max_photon = *std::max_element(photon_trace.begin(), photon_trace.end());

  out.rho_right = DenseMatrix::Zero(params.n_r + 1, params.n_r + 1);
  out.rho_target = DenseMatrix::Zero(params.n_r + 1, params.n_r + 1);
  for (int n = 0; n <= n_max; ++n) {
    for (int m = 0; m <= n_max; ++m) {
      const cplx w = stored(n, m);
      if (w == cplx{}) continue;
      out.rho_right += w * factors[n] * factors[m].adjoint();
      const double sign =
          (options.compensate_endpoint_phase && (n - m) % 2 != 0) ? -1.0 : 1.0;
      out.rho_target(n, m) = sign * w;
    }
  }
  out.fidelity = uhlmann_fidelity(out.rho_target, out.rho_right);
  return out;
}

ScanResult adiabaticity_scan(const ModelParams& params, const CouplingSchedule& base,
                             const std::vector<double>& times, int n, double target_fidelity,
                             const TransferOptions& options, int threads) {
  if (n < 0) throw std::invalid_argument("scan exciton number must be >= 0");
  DenseMatrix stored = DenseMatrix::Zero(n + 1, n + 1);
  stored(n, n) = 1.0;

  ScanResult out;
  out.rows.resize(times.size());
  parallel_for(times.size(), threads, [&](std::size_t i) {
    const TransferResult r =
        transfer_experiment(params, base.with_total_time(times[i]), stored, options);
    out.rows[i] = {times[i], r.fidelity, r.leakage.max_photon};
  });
  for (const ScanRow& row : out.rows) {
    if (row.fidelity >= target_fidelity) {
      out.threshold_time = row.total_time;
      break;
    }
  }
  return out;
}

}  // namespace qet
