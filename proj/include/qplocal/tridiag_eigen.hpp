#pragma once

#include <vector>

#include "qplocal/lattice.hpp"

namespace qplocal {

/// All eigenvalues of a symmetric tridiagonal matrix, sorted ascending.
/// Implicitly shifted QL iteration with Wilkinson shifts.
std::vector<double> tridiagonal_eigenvalues(const TridiagonalMatrix& h);

struct TridiagonalEigensystem {
    std::vector<double> eigenvalues;                 ///< sorted ascending
    std::vector<std::vector<double>> eigenvectors;   ///< eigenvectors[j] matches eigenvalues[j]
    std::vector<double> residuals;                   ///< ||H psi - E psi|| per pair
    double orthonormality_error = 0.0;               ///< max |<psi_i, psi_j> - delta_ij|
};

/// Eigenvalues by QL, eigenvectors by inverse iteration in extended
/// precision with Rayleigh-quotient refinement.  Vectors inside an eigenvalue
/// cluster are re-orthogonalized; signs follow the first component above the
/// representable floor.  Inverse iteration keeps exponentially small tail
/// entries meaningful down to underflow, which the localization diagnostics
/// rely on.
TridiagonalEigensystem tridiagonal_eigensystem(const TridiagonalMatrix& h);

/// ||(H - shift)^{-1}|| by power iteration on the squared resolvent (two
/// triangular solves per step), independent of any eigeudecomposition.
/// Returns +inf when H - shift is exactly singular.
double resolvent_norm(const TridiagonalMatrix& h, double shift, double rel_tol = 1e-12,
                      int max_iterations = 1000);

}  // namespace qplocal
