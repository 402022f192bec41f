#pragma once

#include "logdecay/complex_matrix.hpp"

namespace logdecay {

// Eigen-decomposition of a Hermitian matrix: values ascending, vectors[.,k]
// the unit eigenvector for values[k].
struct HermitianEigen {
    std::vector<double> values;
    ComplexMatrix vectors;
};

// Rejects inputs with ||H - H*|| > hermitian_tol_scale * ||H||_F, then solves
// on the symmetrized (H + H*)/2 (cyclic complex Jacobi).
HermitianEigen eig_hermitian(const ComplexMatrix& h, double hermitian_tol_scale = 1e-10);

// Eigenvalues only, ascending (HermitianSpectrum per the report contract).
std::vector<double> hermitian_spectrum(const ComplexMatrix& h,
                                       double hermitian_tol_scale = 1e-10);

// General dense eigenvalues via Hessenberg reduction + Wilkinson-shifted QR.
// Sorted by (Re, Im) for deterministic output. Throws std::runtime_error with
// a diagnostic if the iteration fails to converge.
std::vector<cplx> eig_general(const ComplexMatrix& a);

}  // namespace logdecay
