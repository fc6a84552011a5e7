#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qplocal/assemble.hpp"
#include "qplocal/lattice.hpp"

namespace qplocal {

/// Raised when a finite restriction is numerically singular (E sits on an
/// eigenvalue of H_Lambda up to rounding).
class SingularRestrictionError : public std::runtime_error {
public:
    explicit SingularRestrictionError(double condition);
    double condition() const { return condition_; }

private:
    double condition_;
};

/// Dense inverse of a finite restriction, with its norms attached.  Row/col
/// indices are interval offsets; entry(m, n) accepts lattice sites.
struct GreensMatrix {
    std::vector<std::vector<double>> entries;
    LatticeInterval interval;
    double operator_norm = 0.0;      ///< spectral norm of the inverse
    double hs_norm = 0.0;            ///< Hilbert-Schmidt (Frobenius) norm
    double condition_estimate = 0.0; ///< spectral condition number of H_Lambda

    std::size_t size() const { return entries.size(); }
    double entry(long long m, long long n) const {
        return entries[static_cast<std::size_t>(m - interval.a)]
                      [static_cast<std::size_t>(n - interval.a)];
    }
    /// Scale used by the norm/decay bounds: the radius (size-1)/2, matching
    /// the centered-window convention.
    double default_scale() const { return (static_cast<double>(size()) - 1.0) / 2.0; }
};

/// Condition threshold separating "E is an eigenvalue" from ill-conditioning.
double singular_condition_threshold();

/// Inverts a symmetric tridiagonal restriction: LDL^T / pivoted-LU column
/// solves for the entries, spectral norm and condition from the QL
/// eigenvalues at desk scales, power iteration beyond.
GreensMatrix invert_tridiagonal(const TridiagonalMatrix& h, const LatticeInterval& interval);

/// G_Lambda = (H_Lambda)^{-1} for the assembled operator.
GreensMatrix greens(const ModelParameters& p, const LatticeInterval& interval);

struct GoodnessVerdict {
    bool norm_ok = false;   ///< ||G|| < e^{N^b}
    bool decay_ok = false;  ///< |G(m,n)| < prefactor * e^{-gamma |m-n|} beyond N/10
    double b = 0.0;
    double gamma = 0.0;
    double scale = 0.0;        ///< N used for both thresholds
    double norm_value = 0.0;
    double norm_threshold = 0.0;
    double worst_ratio = 0.0;  ///< max |G(m,n)| / bound over the checked region
    std::pair<long long, long long> worst_pair{0, 0};

    bool good() const { return norm_ok && decay_ok; }
};

/// Checks the norm bound ||G|| < e^{scale^b} and the off-diagonal bound
/// |G(m,n)| < prefactor e^{-gamma|m-n|} on |m-n| > scale/10.  The scale
/// defaults to the window radius.
GoodnessVerdict verify_ldt_bounds(const GreensMatrix& g, double b, double gamma,
                                  std::optional<double> scale = std::nullopt,
                                  double prefactor = 10.0);

struct DecayFit {
    double rate = 0.0;       ///< gamma-hat: log|G| ~ log(prefactor) - rate * distance
    double prefactor = 0.0;
    double residual = 0.0;   ///< max |log|G|| deviation over the fitted pairs
    std::size_t pairs = 0;   ///< pairs entering the regression
    std::size_t clamped = 0; ///< pairs at the representable floor, flagged and left out
    double cutoff = 0.0;     ///< fitted region: |m-n| > cutoff
    bool reliable = true;    ///< false when the residual exceeds 0.5
};

/// Least-squares fit of log|G(m,n)| against |m-n| over |m-n| > size/10.
/// Entries below 1e-300 are clamped to the floor, counted, and excluded from
/// the regression.  Requires at least 5 usable pairs.
DecayFit decay_fit(const GreensMatrix& g);

/// Same regression on an arbitrary profile: values[i] against distances[i].
DecayFit fit_exponential_profile(const std::vector<double>& distances,
                                 const std::vector<double>& magnitudes);

}  // namespace qplocal
