#pragma once

#include "qet/types.hpp"

namespace qet {

/// exp(-i H dt) for Hermitian H via its eigendecomposition.
DenseMatrix hermitian_propagator(const DenseMatrix& h, double dt);

/// Principal square root of a positive semidefinite matrix; eigenvalues
/// below zero (roundoff) are clamped.
DenseMatrix psd_sqrt(const DenseMatrix& rho);

/// Smallest eigenvalue of the Hermitian part.
double min_eigenvalue(const DenseMatrix& h);

/// Uhlmann fidelity (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2; reduces to
/// |<psi|phi>|^2 for pure states.
double uhlmann_fidelity(const DenseMatrix& rho, const DenseMatrix& sigma);

/// Largest entrywise |A - A^dagger|.
double hermiticity_defect(const DenseMatrix& a);

}  // namespace qet
