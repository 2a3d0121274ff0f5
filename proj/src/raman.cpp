#include "qet/raman.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qet/linalg.hpp"

namespace qet {

namespace {

void require_detuning(double delta) {
  if (delta == 0.0)
    throw DomainError(
        "detuning Delta = 0: the upper level cannot be eliminated; use a detuning large "
        "compared with |Omega| and |Omega_s|");
}

}  // namespace

double RamanParams::validity_ratio() const {
  const double drive = std::max({std::abs(omega_quantized), std::abs(omega_left),
                                 std::abs(omega_right)});
  return drive / std::abs(detuning);
}

EffectiveCoupling effective_coupling(const RamanParams& p, Side side) {
  require_detuning(p.detuning);
  const cplx raw = -p.omega_quantized * std::conj(p.drive(side)) / p.detuning;
  return {std::abs(raw), raw};
}

StarkShifts stark_shifts(const RamanParams& p, int photon_number, Side side) {
  require_detuning(p.detuning);
  if (photon_number < 0) throw std::invalid_argument("photon number must be >= 0");
  const double q = std::norm(p.omega_quantized) / p.detuning;
  const double c = std::norm(p.drive(side)) / p.detuning;
  StarkShifts s;
  s.ground = -q * photon_number;
  s.excited = -c;
  s.omega_effective = p.omega_atomic + q * photon_number - c;
  return s;
}

RamanOracleResult single_atom_oracle(const RamanParams& p, Side side, double duration, double dt,
                                     double norm_tolerance) {
  require_detuning(p.detuning);
  if (!(dt > 0.0) || !(duration >= 0.0))
    throw std::invalid_argument("oracle needs dt > 0 and duration >= 0");

  const cplx om = p.omega_quantized;
  const cplx os = p.drive(side);
  const double delta = p.detuning;

  // Rotating frame: the |a> amplitude is carried as c_a exp(-i Delta t).
  // Order: |g,1>, |e,0>, |a,0>.
  DenseMatrix full = DenseMatrix::Zero(3, 3);
  full(0, 2) = om;
  full(1, 2) = os;
  full(2, 0) = std::conj(om);
  full(2, 1) = std::conj(os);
  full(2, 2) = delta;

  // Order: |g,1>, |e,0>.
  DenseMatrix eff(2, 2);
  eff(0, 0) = -std::norm(om) / delta;
  eff(1, 1) = -std::norm(os) / delta;
  eff(0, 1) = -om * std::conj(os) / delta;
  eff(1, 0) = std::conj(eff(0, 1));

  const DenseMatrix u_full = hermitian_propagator(full, dt);
  const DenseMatrix u_eff = hermitian_propagator(eff, dt);

  RamanOracleResult r;
  r.validity_warning = p.validity_ratio() >= 0.3;

  Vector psi = Vector::Zero(3);
  psi[1] = 1.0;
  Vector chi = Vector::Zero(2);
  chi[1] = 1.0;

  const auto steps = static_cast<long>(std::ceil(duration / dt - 1e-9));
  r.times.reserve(steps + 1);
  for (long k = 0; k <= steps; ++k) {
    if (k > 0) {
      psi = u_full * psi;
      chi = u_eff * chi;
    }
    const double drift = std::max(std::abs(psi.norm() - 1.0), std::abs(chi.norm() - 1.0));
    r.max_norm_drift = std::max(r.max_norm_drift, drift);
    if (drift > norm_tolerance)
      throw IntegrationError("Raman oracle norm drift " + std::to_string(drift) +
                             " exceeds tolerance; reduce dt");

    const std::array<double, 3> pf{std::norm(psi[0]), std::norm(psi[1]), std::norm(psi[2])};
    const std::array<double, 2> pe{std::norm(chi[0]), std::norm(chi[1])};
    r.times.push_back(k * dt);
    r.full.push_back(pf);
    r.effective.push_back(pe);
    r.max_deviation =
        std::max({r.max_deviation, std::abs(pf[0] - pe[0]), std::abs(pf[1] - pe[1])});
    r.max_upper_population = std::max(r.max_upper_population, pf[2]);
  }
  return r;
}

}  // namespace qet
