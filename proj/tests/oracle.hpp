// Reference implementations used only by the tests. Everything here is
// written from the closed-form matrix elements, without touching the library
// operators, so agreement is a real cross-check.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

using cplx = std::complex<double>;
using Key = std::array<int, 3>;  // m_l, m_r, n_ph
using Ket = std::map<Key, cplx>;

struct Dims {
  int n_l;
  int n_r;
  int cap;
};

/// Collective raising on slot 0 (left) or 1 (right), photon creation on 2.
inline Ket raise(const Ket& psi, int slot, const Dims& d) {
  Ket out;
  for (const auto& [k, v] : psi) {
    Key up = k;
    ++up[slot];
    double f = 0.0;
    if (slot == 2) {
      if (up[2] > d.cap) continue;
      f = std::sqrt(static_cast<double>(up[2]));
    } else {
      const int n = slot == 0 ? d.n_l : d.n_r;
      const int m = k[slot];
      if (m >= n) continue;
      f = std::sqrt(static_cast<double>((n - m) * (m + 1)));
    }
    out[up] += f * v;
  }
  return out;
}

inline Ket lower(const Ket& psi, int slot, const Dims& d) {
  Ket out;
  for (const auto& [k, v] : psi) {
    const int m = k[slot];
    if (m == 0) continue;
    Key dn = k;
    --dn[slot];
    double f = 0.0;
    if (slot == 2) {
      f = std::sqrt(static_cast<double>(m));
    } else {
      const int n = slot == 0 ? d.n_l : d.n_r;
      f = std::sqrt(static_cast<double>((n - m + 1) * m));
    }
    out[dn] += f * v;
  }
  return out;
}

inline Ket add(const Ket& a, cplx ca, const Ket& b, cplx cb) {
  Ket out;
  for (const auto& [k, v] : a) out[k] += ca * v;
  for (const auto& [k, v] : b) out[k] += cb * v;
  return out;
}

inline Ket scale(const Ket& a, cplx c) { return add(a, c, {}, 0.0); }

inline double norm(const Ket& a) {
  double s = 0.0;
  for (const auto& [k, v] : a) s += std::norm(v);
  return std::sqrt(s);
}

inline cplx amplitude(const Ket& a, Key k) {
  auto it = a.find(k);
  return it == a.end() ? cplx{} : it->second;
}

/// (cos a S_+(l)/sqrt N_l - sin a S_+(r)/sqrt N_r) applied once.
inline Ket dark_raise(const Ket& psi, double alpha, const Dims& d) {
  return add(raise(psi, 0, d), std::cos(alpha) / std::sqrt(double(d.n_l)), raise(psi, 1, d),
             -std::sin(alpha) / std::sqrt(double(d.n_r)));
}

inline Ket bright_lower(const Ket& psi, double alpha, const Dims& d) {
  return add(lower(psi, 0, d), std::sin(alpha) / std::sqrt(double(d.n_l)), lower(psi, 1, d),
             std::cos(alpha) / std::sqrt(double(d.n_r)));
}

inline Ket bright_raise(const Ket& psi, double alpha, const Dims& d) {
  return add(raise(psi, 0, d), std::sin(alpha) / std::sqrt(double(d.n_l)), raise(psi, 1, d),
             std::cos(alpha) / std::sqrt(double(d.n_r)));
}

/// Unnormalized dark-ladder state and its norm.
inline std::pair<Ket, double> dark_state(int n, double alpha, const Dims& d) {
  Ket psi{{Key{0, 0, 0}, 1.0}};
  for (int k = 1; k <= n; ++k) psi = scale(dark_raise(psi, alpha, d), 1.0 / std::sqrt(double(k)));
  const double nrm = norm(psi);
  return {scale(psi, 1.0 / nrm), nrm};
}

/// ||(a bright^dagger + a^dagger bright) psi|| for unit collective coupling.
inline double darkness(const Ket& psi, double alpha, const Dims& d) {
  const Ket t1 = lower(bright_raise(psi, alpha, d), 2, d);  // bright^dagger then a
  const Ket t2 = raise(bright_lower(psi, alpha, d), 2, d);
  return norm(add(t1, 1.0, t2, 1.0));
}

/// All (m_l, m_r, n_ph) with the given caps, sorted by (E, m_l, m_r, n_ph).
inline std::vector<Key> enumerate(int n_l, int n_r, int cap, int max_e) {
  std::vector<Key> out;
  for (int e = 0; e <= max_e; ++e)
    for (int ml = 0; ml <= n_l; ++ml)
      for (int mr = 0; mr <= n_r; ++mr)
        for (int np = 0; np <= cap; ++np)
          if (ml + mr + np == e) out.push_back({ml, mr, np});
  return out;
}

/// Dense many-atom Hamiltonian on `states` written straight from the model:
/// sum_s (w_s/2)(2 m_s - N_s) + w_ph n + sum_s g_s (a S_+(s) + h.c.).
inline Eigen::MatrixXcd dense_hamiltonian(const std::vector<Key>& states, const Dims& d, double w_l,
                                          double w_r, double w_ph, double g_l, double g_r) {
  const auto n = static_cast<Eigen::Index>(states.size());
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
  std::map<Key, Eigen::Index> idx;
  for (Eigen::Index i = 0; i < n; ++i) idx[states[i]] = i;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Key& k = states[i];
    h(i, i) = 0.5 * w_l * (2 * k[0] - d.n_l) + 0.5 * w_r * (2 * k[1] - d.n_r) + w_ph * k[2];
    Ket ket{{k, 1.0}};
    const Ket hop = add(lower(raise(ket, 0, d), 2, d), g_l, lower(raise(ket, 1, d), 2, d), g_r);
    const Ket hop_dag = add(raise(lower(ket, 0, d), 2, d), g_l, raise(lower(ket, 1, d), 2, d), g_r);
    for (const auto& part : {hop, hop_dag})
      for (const auto& [key, v] : part) {
        auto it = idx.find(key);
        if (it != idx.end()) h(it->second, i) += v;
      }
  }
  return h;
}

inline Eigen::MatrixXcd expm_hermitian(const Eigen::MatrixXcd& h, double t) {
  const Eigen::MatrixXcd x = cplx(0.0, -t) * h;
  return x.exp();
}

inline Eigen::VectorXcd random_vector(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> dist;
  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = {dist(rng), dist(rng)};
  return v;
}

/// Closed-form Dicke amplitude <m| exp(theta (S_+ - S_-)) |0> by series
/// expansion of the exponential on the (N+1)-dimensional ladder.
inline std::vector<double> rotated_ground(int n, double theta) {
  Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(n + 1, n + 1);
  for (int m = 0; m < n; ++m) {
    const double f = std::sqrt(double((n - m) * (m + 1)));
    gen(m + 1, m) = theta * f;
    gen(m, m + 1) = -theta * f;
  }
  const Eigen::MatrixXd u = gen.exp();
  return std::vector<double>(u.col(0).data(), u.col(0).data() + n + 1);
}

}  // namespace oracle
