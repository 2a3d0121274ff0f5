#include "qet/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "qet/bosonic.hpp"
#include "qet/darkstate.hpp"
#include "qet/dynamics.hpp"
#include "qet/raman.hpp"

namespace qet {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

nlohmann::json basis_summary(const BasisIndex& basis) {
  json blocks = json::array();
  for (int e = 0; e < basis.num_blocks(); ++e) {
    const BlockRange r = basis.block(e);
    blocks.push_back({{"total_excitation", e}, {"offset", r.offset}, {"size", r.size}});
  }
  return {{"n_l", basis.n_l_atoms()},
          {"n_r", basis.n_r_atoms()},
          {"photon_cap", basis.photon_cap()},
          {"max_total_excitation", basis.max_total_excitation()},
          {"truncated", basis.truncated()},
          {"size", basis.size()},
          {"blocks", blocks}};
}

const std::vector<std::string>& subcommand_names() {
  static const std::vector<std::string> names = {"evolve",        "scan",         "darkcheck",
                                                 "analytic",      "bosonic-check", "raman-oracle",
                                                 "hamiltonian"};
  return names;
}

namespace {

class CsvWriter {
 public:
  CsvWriter(const fs::path& path, const std::vector<std::string>& header) : path_(path), out_(path) {
    if (!out_) throw std::runtime_error(path.string() + ": cannot open for writing");
    for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
    out_ << '\n';
  }

  CsvWriter& cell(double x) { return put(format_real(x)); }
  CsvWriter& cell(int x) { return put(std::to_string(x)); }
  CsvWriter& cell(cplx z) { return cell(z.real()).cell(z.imag()); }
  void end_row() {
    out_ << '\n';
    first_ = true;
  }
  void close() {
    out_.close();
    if (!out_) throw std::runtime_error(path_.string() + ": write failed");
  }

 private:
  CsvWriter& put(const std::string& s) {
    out_ << (first_ ? "" : ",") << s;
    first_ = false;
    return *this;
  }

  fs::path path_;
  std::ofstream out_;
  bool first_ = true;
};

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
  out << j.dump(2) << '\n';
  out.close();
  if (!out) throw std::runtime_error(path.string() + ": write failed");
}

/// Threshold bookkeeping shared by every subcommand.
class Checks {
 public:
  void upper(const std::string& name, double value, std::optional<double> limit) {
    if (limit) add(name, value, *limit, "<=", value <= *limit);
  }
  void lower(const std::string& name, double value, std::optional<double> limit) {
    if (limit) add(name, value, *limit, ">=", value >= *limit);
  }
  json to_json() const { return list_; }
  const std::vector<std::string>& failed() const { return failed_; }

 private:
  void add(const std::string& name, double value, double limit, const char* op, bool passed) {
    list_.push_back(
        {{"name", name}, {"value", value}, {"limit", limit}, {"relation", op}, {"passed", passed}});
    if (!passed) failed_.push_back(name);
  }

  json list_ = json::array();
  std::vector<std::string> failed_;
};

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

json matrix_json(const DenseMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

std::vector<double> uniform_grid(double t_max, int samples) {
  std::vector<double> t(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) t[k] = t_max * k / (samples - 1);
  return t;
}

BosonicParams bosonic_params(const ExperimentConfig& c, double eta) {
  return {c.analytic.omega, c.analytic.epsilon, c.analytic.g, c.analytic.alpha, eta};
}

struct Prepared {
  StateVector state;
  std::optional<Excitation> transfer_target;
};

Prepared prepare_initial(const ExperimentConfig& c, const CouplingSchedule& schedule) {
  const ModelParams& m = c.model;
  const InitialStateSpec& in = c.initial_state;
  const std::size_t cap = c.run.dimension_cap;
  switch (in.kind) {
    case InitialStateSpec::Kind::product: {
      const Excitation& e = in.product;
      const BasisPtr b = build_basis(m.n_l, m.n_r, m.photon_cap, e.total(), cap);
      std::optional<Excitation> target;
      if (e.m_r == 0 && e.n_ph == 0 && e.m_l <= m.n_r) target = Excitation{0, e.m_l, 0};
      return {product_state(b, e.m_l, e.m_r, e.n_ph), target};
    }
    case InitialStateSpec::Kind::dark: {
      const BasisPtr b = build_basis(m.n_l, m.n_r, m.photon_cap, in.n, cap);
      const Couplings g0 = schedule.at(0.0);
      const MixingOps mops = build_mixing_ops(build_collective_ops(b), g0.g_l, g0.g_r);
      return {build_dark_state(mops, b, in.n).state, Excitation{0, in.n, 0}};
    }
    case InitialStateSpec::Kind::coherent: {
      std::vector<double> amps = spin_coherent_amplitudes(m.n_l, in.eta);
      int top = m.n_l;
      double tail = 0.0;
      while (top > 0 && tail + amps[top] * amps[top] < 1e-26) {
        tail += amps[top] * amps[top];
        --top;
      }
      const BasisPtr b = build_basis(m.n_l, m.n_r, m.photon_cap, top, cap);
      StateVector psi(b);
      for (int k = 0; k <= top; ++k)
        psi.amplitudes()[static_cast<Eigen::Index>(b->index_of({k, 0, 0}))] = amps[k];
      psi.normalize();
      return {psi, std::nullopt};
    }
    case InitialStateSpec::Kind::density: break;
  }
  throw std::logic_error("density initial states go through the transfer path");
}

std::vector<Observable> evolve_observables(const RunSpec& r) {
  if (!r.observables.empty()) return r.evolve_options().observables;
  return {Observable::alpha,           Observable::dark_population, Observable::photon_population,
          Observable::exciton_number,  Observable::left_population, Observable::right_population,
          Observable::left_lowering};
}

double max_of(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v)
    if (std::isfinite(x)) m = std::max(m, x);
  return m;
}

RunOutcome run_transfer(const ExperimentConfig& c, const fs::path& dir, json& summary, Checks& checks) {
  RunOutcome out;
  const CouplingSchedule schedule = c.schedule.build(c.model);
  TransferOptions opt;
  opt.evolve = c.run.evolve_options();
  opt.compensate_endpoint_phase = c.run.compensate_endpoint_phase;
  const TransferResult r = transfer_experiment(c.model, schedule, c.initial_state.rho, opt);

  const fs::path csv = dir / "evolve_density.csv";
  CsvWriter w(csv, {"row", "col", "rho_right_re", "rho_right_im", "rho_target_re", "rho_target_im"});
  for (Eigen::Index i = 0; i < r.rho_right.rows(); ++i)
    for (Eigen::Index k = 0; k < r.rho_right.cols(); ++k) {
      w.cell(static_cast<int>(i)).cell(static_cast<int>(k)).cell(r.rho_right(i, k)).cell(r.rho_target(i, k));
      w.end_row();
    }
  w.close();
  out.artifacts.push_back(csv);

  summary["fidelity"] = r.fidelity;
  summary["leakage"] = {{"photon", r.leakage.photon},
                        {"left", r.leakage.left},
                        {"max_photon", r.leakage.max_photon}};
  summary["norm_drift"] = r.norm_drift;
  summary["rho_right"] = matrix_json(r.rho_right);
  summary["rho_target"] = matrix_json(r.rho_target);
  checks.lower("fidelity", r.fidelity, c.run.thresholds.min_fidelity);
  checks.upper("max_photon_population", r.leakage.max_photon, c.run.thresholds.max_photon);
  return out;
}

RunOutcome run_evolve(const ExperimentConfig& c, const fs::path& dir, json& summary, Checks& checks) {
  if (c.initial_state.kind == InitialStateSpec::Kind::density)
    return run_transfer(c, dir, summary, checks);

  RunOutcome out;
  const CouplingSchedule schedule = c.schedule.build(c.model);
  const Prepared init = prepare_initial(c, schedule);
  EvolveOptions opt = c.run.evolve_options();
  opt.observables = evolve_observables(c.run);
  const EvolutionResult r = evolve(c.model, schedule, init.state, opt);

  auto has = [&](Observable o) {
    return std::find(opt.observables.begin(), opt.observables.end(), o) != opt.observables.end();
  };
  std::vector<std::string> header = {"t", "g_l", "g_r"};
  if (has(Observable::alpha)) header.push_back("alpha");
  if (has(Observable::dark_population))
    for (int n : opt.tracked_dark) header.push_back("dark_population_" + std::to_string(n));
  if (has(Observable::photon_population)) header.push_back("photon_population");
  if (has(Observable::exciton_number)) header.push_back("exciton_number");
  if (has(Observable::left_population)) header.push_back("left_population");
  if (has(Observable::right_population)) header.push_back("right_population");
  if (has(Observable::left_lowering)) {
    header.push_back("left_lowering_re");
    header.push_back("left_lowering_im");
  }

  const fs::path csv = dir / "evolve.csv";
  CsvWriter w(csv, header);
  for (std::size_t k = 0; k < r.times.size(); ++k) {
    const Couplings g = schedule.at(r.times[k]);
    w.cell(r.times[k]).cell(g.g_l).cell(g.g_r);
    if (has(Observable::alpha)) w.cell(r.alpha[k]);
    if (has(Observable::dark_population))
      for (const auto& series : r.dark_population) w.cell(series[k]);
    if (has(Observable::photon_population)) w.cell(r.photon_population[k]);
    if (has(Observable::exciton_number)) w.cell(r.exciton_number[k]);
    if (has(Observable::left_population)) w.cell(r.left_population[k]);
    if (has(Observable::right_population)) w.cell(r.right_population[k]);
    if (has(Observable::left_lowering)) w.cell(r.left_lowering[k]);
    w.end_row();
  }
  w.close();
  out.artifacts.push_back(csv);

  summary["basis"] = basis_summary(init.state.basis());
  summary["steps"] = r.steps;
  summary["refined_steps"] = r.refined_steps;
  summary["norm_drift"] = r.norm_drift;
  summary["max_step_error"] = r.max_step_error;
  json final_obs = json::object();
  if (has(Observable::photon_population)) {
    final_obs["photon_population"] = r.photon_population.back();
    summary["max_photon_population"] = max_of(r.photon_population);
    checks.upper("max_photon_population", max_of(r.photon_population), c.run.thresholds.max_photon);
  }
  if (has(Observable::left_population)) final_obs["left_population"] = r.left_population.back();
  if (has(Observable::right_population)) final_obs["right_population"] = r.right_population.back();
  if (has(Observable::dark_population))
    for (std::size_t i = 0; i < opt.tracked_dark.size(); ++i)
      final_obs["dark_population_" + std::to_string(opt.tracked_dark[i])] = r.dark_population[i].back();
  summary["final"] = final_obs;

  if (init.transfer_target) {
    const auto idx = r.final_state->basis().find(*init.transfer_target);
    const double fid = idx ? std::norm(r.final_state->amplitudes()[static_cast<Eigen::Index>(*idx)]) : 0.0;
    summary["fidelity"] = fid;
    summary["fidelity_target"] = {init.transfer_target->m_l, init.transfer_target->m_r,
                                  init.transfer_target->n_ph};
    checks.lower("fidelity", fid, c.run.thresholds.min_fidelity);
  } else {
    summary["fidelity"] = nullptr;
    if (c.run.thresholds.min_fidelity)
      throw std::invalid_argument(
          "run.thresholds.min_fidelity needs a transfer target (dark or single-sided product "
          "initial state)");
  }
  return out;
}

RunOutcome run_scan(const ExperimentConfig& c, const fs::path& dir, json& summary, Checks& checks,
                    int threads) {
  RunOutcome out;
  TransferOptions opt;
  opt.evolve = c.run.evolve_options();
  opt.compensate_endpoint_phase = c.run.compensate_endpoint_phase;
  const CouplingSchedule base = c.schedule.build(c.model);
  const ScanResult r = adiabaticity_scan(c.model, base, c.scan.total_times, c.scan.n,
                                         c.scan.target_fidelity, opt, threads);

  const fs::path csv = dir / "scan.csv";
  CsvWriter w(csv, {"total_time", "g_max_T", "fidelity", "max_photon_population"});
  for (const ScanRow& row : r.rows) {
    w.cell(row.total_time).cell(row.total_time * base.peak()).cell(row.fidelity).cell(
        row.max_photon_population);
    w.end_row();
  }
  w.close();
  out.artifacts.push_back(csv);

  std::vector<ScanRow> sorted = r.rows;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const ScanRow& a, const ScanRow& b) { return a.total_time < b.total_time; });
  double worst_drop = 0.0;
  double max_photon = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i > 0) worst_drop = std::max(worst_drop, sorted[i - 1].fidelity - sorted[i].fidelity);
    max_photon = std::max(max_photon, sorted[i].max_photon_population);
  }
  summary["n"] = c.scan.n;
  summary["target_fidelity"] = c.scan.target_fidelity;
  summary["threshold_time"] = r.threshold_time ? json(*r.threshold_time) : json(nullptr);
  summary["largest_fidelity_drop"] = worst_drop;
  summary["fidelity_at_longest_time"] = sorted.back().fidelity;
  summary["max_photon_population"] = max_photon;
  checks.lower("fidelity_at_longest_time", sorted.back().fidelity, c.run.thresholds.min_fidelity);
  checks.upper("largest_fidelity_drop", worst_drop, c.run.thresholds.monotone_tolerance);
  checks.upper("max_photon_population", max_photon, c.run.thresholds.max_photon);
  return out;
}

RunOutcome run_darkcheck(const ExperimentConfig& c, const fs::path& dir, json& summary,
                         Checks& checks) {
  RunOutcome out;
  std::vector<double> alphas = c.darkcheck.alpha;
  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi / 2);
  for (int k = 0; k < c.darkcheck.random_alphas; ++k) alphas.push_back(angle(rng));

  const fs::path csv = dir / "darkcheck.csv";
  CsvWriter w(csv, {"N_l", "N_r", "n", "alpha", "norm_deficit", "darkness"});
  double worst_single = 0.0;
  double worst = 0.0;
  std::size_t rows = 0;
  for (int n_atoms : c.darkcheck.n_atoms)
    for (int n : c.darkcheck.n)
      for (double a : alphas) {
        const DarkStateReport rep = dark_state_report(n_atoms, n_atoms, n, a);
        w.cell(n_atoms).cell(n_atoms).cell(n).cell(a).cell(1.0 - rep.norm_before_normalization).cell(
            rep.darkness);
        w.end_row();
        ++rows;
        worst = std::max(worst, rep.darkness);
        if (n <= 1) worst_single = std::max(worst_single, rep.darkness);
      }
  w.close();
  out.artifacts.push_back(csv);

  summary["rows"] = rows;
  summary["alphas"] = alphas;
  summary["max_darkness"] = worst;
  summary["max_darkness_single_exciton"] = worst_single;
  // Only the single-exciton state is exactly dark; larger n leak at O(1/N).
  checks.upper("max_darkness_single_exciton", worst_single, c.run.thresholds.max_darkness);
  return out;
}

RunOutcome run_analytic(const ExperimentConfig& c, const fs::path& dir, json& summary, Checks& checks) {
  RunOutcome out;
  const BosonicParams p = bosonic_params(c, 1.0);
  const fs::path csv = dir / "analytic.csv";
  CsvWriter w(csv, {"t", "f_re", "f_im", "g_amp_re", "g_amp_im", "h_re", "h_im", "norm"});
  double worst = 0.0;
  for (double t : uniform_grid(c.analytic.t_max, c.analytic.samples)) {
    const ModeAmplitudes m = analytic_amplitudes(p, t);
    const double norm = m.norm_sq();
    worst = std::max(worst, std::abs(norm - 1.0));
    w.cell(t).cell(m.left).cell(m.right).cell(m.photon).cell(norm);
    w.end_row();
  }
  w.close();
  out.artifacts.push_back(csv);

  const PolaritonTransform pt = polariton_transform(p);
  summary["xi"] = p.xi();
  summary["mean_frequency"] = p.mean_frequency();
  summary["polariton_angle"] = p.polariton_angle();
  summary["frequencies"] = {{"upper", pt.upper}, {"lower", pt.lower}, {"dark", pt.dark}};
  summary["max_normalization_error"] = worst;
  checks.upper("max_normalization_error", worst, c.run.thresholds.normalization_tolerance);
  return out;
}

RunOutcome run_bosonic_check(const ExperimentConfig& c, const fs::path& dir, json& summary,
                             Checks& checks, int threads) {
  RunOutcome out;
  const BosonicCheckSpec& b = c.bosonic_check;
  const BosonicParams p = bosonic_params(c, b.eta);
  const std::vector<double> grid = uniform_grid(b.t_max, b.samples);

  const CoherentEvolution ev = coherent_evolution_numeric(p, b.fock_cap, grid);
  const fs::path coherent_csv = dir / "bosonic_coherent.csv";
  CsvWriter w(coherent_csv, {"t", "b_l_re", "b_l_im", "b_r_re", "b_r_im", "a_re", "a_im", "deviation",
                             "total_quanta", "dark_quanta", "purity_l", "purity_r", "purity_ph"});
  for (const CoherentSample& s : ev.samples) {
    w.cell(s.t).cell(s.b_l).cell(s.b_r).cell(s.a).cell(s.deviation).cell(s.total_quanta).cell(
        s.dark_quanta);
    w.cell(s.purity_l).cell(s.purity_r).cell(s.purity_ph);
    w.end_row();
  }
  w.close();
  out.artifacts.push_back(coherent_csv);

  std::vector<int> sizes = b.n_atoms;
  std::sort(sizes.begin(), sizes.end());
  const ConvergenceReport conv =
      finite_N_convergence(p, sizes, grid, std::max(1, c.model.photon_cap), threads);
  const fs::path conv_csv = dir / "bosonic_convergence.csv";
  CsvWriter cw(conv_csv, {"n_atoms", "max_deviation"});
  for (const ConvergenceRow& row : conv.rows) {
    cw.cell(row.n_atoms).cell(row.max_deviation);
    cw.end_row();
  }
  cw.close();
  out.artifacts.push_back(conv_csv);

  double worst_rise = 0.0;
  for (std::size_t i = 1; i < conv.rows.size(); ++i)
    worst_rise = std::max(worst_rise, conv.rows[i].max_deviation - conv.rows[i - 1].max_deviation);

  summary["coherent"] = {{"max_deviation", ev.max_deviation},
                         {"truncation_error", ev.truncation_error},
                         {"max_quanta_drift", ev.max_quanta_drift},
                         {"max_dark_drift", ev.max_dark_drift},
                         {"min_purity", ev.min_purity}};
  json rows = json::array();
  for (const ConvergenceRow& row : conv.rows)
    rows.push_back({{"n_atoms", row.n_atoms}, {"max_deviation", row.max_deviation}});
  summary["finite_n"] = {{"rows", rows},
                         {"monotone", conv.monotone},
                         {"largest_rise", worst_rise},
                         {"single_excitation_deviation", conv.single_excitation_deviation}};
  checks.upper("coherent_max_deviation", ev.max_deviation, c.run.thresholds.max_deviation);
  checks.upper("finite_n_largest_rise", worst_rise, c.run.thresholds.monotone_tolerance);
  return out;
}

RunOutcome run_raman(const ExperimentConfig& c, const fs::path& dir, json& summary, Checks& checks) {
  RunOutcome out;
  const RamanSpec& rs = c.raman;
  const RamanOracleResult r =
      single_atom_oracle(rs.params, rs.side, rs.duration, rs.dt, c.run.norm_tolerance);

  const fs::path csv = dir / "raman_oracle.csv";
  CsvWriter w(csv, {"t", "P_g", "P_e", "P_a", "P_g_eff", "P_e_eff"});
  for (std::size_t k = 0; k < r.times.size(); ++k) {
    w.cell(r.times[k]).cell(r.full[k][0]).cell(r.full[k][1]).cell(r.full[k][2]);
    w.cell(r.effective[k][0]).cell(r.effective[k][1]);
    w.end_row();
  }
  w.close();
  out.artifacts.push_back(csv);

  const EffectiveCoupling g = effective_coupling(rs.params, rs.side);
  json shifts = json::array();
  for (int n : {0, 1}) {
    const StarkShifts s = stark_shifts(rs.params, n, rs.side);
    shifts.push_back({{"photon_number", n},
                      {"ground", s.ground},
                      {"excited", s.excited},
                      {"omega_effective", s.omega_effective}});
  }
  summary["side"] = to_string(rs.side);
  summary["effective_coupling"] = {{"magnitude", g.magnitude}, {"raw", complex_json(g.raw)}};
  summary["stark_shifts"] = shifts;
  summary["validity_ratio"] = rs.params.validity_ratio();
  summary["validity_warning"] = r.validity_warning;
  summary["max_deviation"] = r.max_deviation;
  summary["max_upper_population"] = r.max_upper_population;
  summary["max_norm_drift"] = r.max_norm_drift;
  checks.upper("max_deviation", r.max_deviation, c.run.thresholds.max_deviation);
  return out;
}

RunOutcome run_hamiltonian(const ExperimentConfig& c, const fs::path& dir, json& summary) {
  RunOutcome out;
  const ModelParams& m = c.model;
  const CouplingSchedule schedule = c.schedule.build(m);
  const BasisPtr b = build_basis(m.n_l, m.n_r, m.photon_cap, std::nullopt, c.run.dimension_cap);
  const HamiltonianMatrix h = hamiltonian_at(m, b, schedule, 0.0);

  const fs::path txt = dir / "hamiltonian.txt";
  std::ofstream os(txt);
  if (!os) throw std::runtime_error(txt.string() + ": cannot open for writing");
  h.write_triplets(os);
  os.close();
  if (!os) throw std::runtime_error(txt.string() + ": write failed");
  out.artifacts.push_back(txt);

  summary["basis"] = basis_summary(*b);
  summary["nonzeros"] = h.matrix.nonZeros();
  summary["t"] = 0.0;
  return out;
}

}  // namespace

RunOutcome run_subcommand(const std::string& name, const ExperimentConfig& config,
                          const fs::path& out_dir, int threads) {
  const auto& names = subcommand_names();
  if (std::find(names.begin(), names.end(), name) == names.end())
    throw std::invalid_argument("unknown subcommand '" + name + "'");
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw std::runtime_error(out_dir.string() + ": cannot create directory: " + ec.message());

  json summary = {{"subcommand", name}, {"seed", config.seed}};
  Checks checks;
  std::string stem = name;
  std::replace(stem.begin(), stem.end(), '-', '_');
  const fs::path summary_path = out_dir / (stem + "_summary.json");

  RunOutcome out;
  try {
    if (name == "evolve")
      out = run_evolve(config, out_dir, summary, checks);
    else if (name == "scan")
      out = run_scan(config, out_dir, summary, checks, threads);
    else if (name == "darkcheck")
      out = run_darkcheck(config, out_dir, summary, checks);
    else if (name == "analytic")
      out = run_analytic(config, out_dir, summary, checks);
    else if (name == "bosonic-check")
      out = run_bosonic_check(config, out_dir, summary, checks, threads);
    else if (name == "raman-oracle")
      out = run_raman(config, out_dir, summary, checks);
    else
      out = run_hamiltonian(config, out_dir, summary);
  } catch (const std::exception& e) {
    summary["error"] = e.what();
    summary["passed"] = false;
    write_json(summary_path, summary);
    throw;
  }

  summary["thresholds"] = checks.to_json();
  summary["passed"] = checks.failed().empty();
  if (!config.warnings.empty()) summary["config_warnings"] = config.warnings;
  write_json(summary_path, summary);
  out.artifacts.push_back(summary_path);
  out.failed_thresholds = checks.failed();
  out.exit_code = out.failed_thresholds.empty() ? kExitOk : kExitThresholdFailed;
  return out;
}

}  // namespace qet
