#pragma once

#include <cstddef>
#include <vector>

#include "qplocal/assemble.hpp"
#include "qplocal/greens.hpp"
#include "qplocal/lattice.hpp"

namespace qplocal {

/// Inverse participation ratio sum psi^4 of an l2-normalized vector.
/// Throws when the norm is off unity by more than 1e-10.
double ipr(const std::vector<double>& psi);

/// Eigenpairs of the truncated Jacobi operator with localization diagnostics.
struct EigenReport {
    LatticeInterval interval;
    std::vector<double> eigenvalues;                ///< ascending
    std::vector<std::vector<double>> eigenvectors;  ///< l2-normalized, matched to eigenvalues
    std::vector<double> residuals;                  ///< ||H1 psi - E psi|| per pair
    std::vector<double> ipr_values;
    std::vector<long long> centers;                 ///< localization center (argmax site)
    std::vector<DecayFit> decay_fits;               ///< per-vector fit; see fit_ok
    std::vector<bool> fit_ok;                       ///< false when too few usable tail points
    double max_residual = 0.0;
    double orthonormality_error = 0.0;
    bool pencil_fallback = false;                   ///< degenerate weights, pencil route used
    std::vector<long long> floored_sites;           ///< sites clamped at the fallback floor
};

/// Full eigen-decomposition of W^{-1/2} H0 W^{-1/2} restricted to the
/// interval.  When some orbit weight dips below the floor the routine falls
/// back to the generalized (pencil) route with weights clamped at 1e-8 and
/// flags the affected sites.
EigenReport eigensolve_jacobi(const ModelParameters& p, const LatticeInterval& interval,
                              double floor);

struct PencilEigensystem {
    std::vector<double> eigenvalues;
    std::vector<std::vector<double>> eigenvectors;  ///< l2-normalized
};

/// Generalized eigenproblem H0 psi = E W psi with diagonal positive W,
/// solved by a dense route independent of the Jacobi-transform path.
/// Throws std::invalid_argument on a non-positive weight entry.
PencilEigensystem pencil_eigensolve(const TridiagonalMatrix& h0,
                                    const std::vector<double>& weights);

/// Interior values from boundary data through the finite-volume inverse:
///   psi(n) = psi_{a-1} G(n, a) + psi_{b+1} G(n, b).
/// For a true generalized eigenvector restricted to [a, b] this is an
/// identity, not an approximation.
std::vector<double> poisson_reconstruct(double psi_left, double psi_right,
                                        const GreensMatrix& g);

/// Exponential fit of |psi| against the distance to its localization center,
/// ignoring a core of the given radius.  Entries under 1e-300 are flagged and
/// left out; throws when fewer than 5 usable points remain.
DecayFit decay_rate_of_eigenvector(const std::vector<double>& psi, std::size_t center_index,
                                   double core_radius = 5.0);

struct LyapunovEstimate {
    double energy = 0.0;
    double gamma = 0.0;  ///< per lattice step
    long long steps = 0;
    Phase phase;
    int renormalizations = 0;
};

/// Transfer-matrix Lyapunov exponent of u_{n+1} = (lambda v_n - E w_n) u_n - u_{n-1},
/// QR-renormalized every 16 steps.
LyapunovEstimate lyapunov(const ModelParameters& p, double energy, long long steps);

struct SpectrumDistance {
    double eigenvalue_route = 0.0;  ///< min_j |E - E_j|
    double resolvent_route = 0.0;   ///< ||(H1 - E)^{-1}||^{-1} by power iteration
    double relative_gap = 0.0;      ///< |difference| / max(routes)
};

/// Distance from E to the spectrum of the restricted Jacobi operator,
/// computed both ways.
SpectrumDistance distance_to_spectrum(double energy, const ModelParameters& p,
                                      const LatticeInterval& interval, double floor);

}  // namespace qplocal
