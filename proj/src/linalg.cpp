#include "qet/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace qet {

DenseMatrix hermitian_propagator(const DenseMatrix& h, double dt) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(h);
  if (es.info() != Eigen::Success) throw std::runtime_error("Hermitian eigensolver failed");
  const Eigen::VectorXd& w = es.eigenvalues();
  Vector phases(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) phases[i] = std::polar(1.0, -w[i] * dt);
  const DenseMatrix& v = es.eigenvectors();
  return v * phases.asDiagonal() * v.adjoint();
}

DenseMatrix psd_sqrt(const DenseMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(0.5 * (rho + rho.adjoint()));
  Eigen::VectorXd w = es.eigenvalues();
  for (Eigen::Index i = 0; i < w.size(); ++i) w[i] = std::sqrt(std::max(0.0, w[i]));
  const DenseMatrix& v = es.eigenvectors();
  return v * w.cast<cplx>().asDiagonal() * v.adjoint();
}

double min_eigenvalue(const DenseMatrix& h) {
  if (h.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(0.5 * (h + h.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double uhlmann_fidelity(const DenseMatrix& rho, const DenseMatrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
    throw std::invalid_argument("fidelity of matrices with different shapes");
  const DenseMatrix s = psd_sqrt(rho);
  const DenseMatrix inner = s * sigma * s;
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(0.5 * (inner + inner.adjoint()),
                                                Eigen::EigenvaluesOnly);
  double tr = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    tr += std::sqrt(std::max(0.0, es.eigenvalues()[i]));
  return tr * tr;
}

double hermiticity_defect(const DenseMatrix& a) {
  if (a.size() == 0) return 0.0;
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace qet
