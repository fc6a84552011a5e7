#pragma once

#include <span>
#include <stdexcept>

#include "qplocal/frequency.hpp"
#include "qplocal/lattice.hpp"
#include "qplocal/torus_function.hpp"
#include "qplocal/weight.hpp"

namespace qplocal {

/// Full parameter tuple of the operator family
///   (H u)_n = -u_{n+1} - u_{n-1} + (lambda v(x + n w1) - E w(y + n w2)) u_n.
struct ModelParameters {
    double coupling = 0.0;  ///< lambda
    double energy = 0.0;    ///< E
    AnalyticTorusFunction v;
    WeightFunction w;
    FrequencyVector omega;
    Phase phase;

    double potential_at(long long n) const;  ///< lambda * v(x + n w1)
    double weight_at(long long n) const;     ///< w(y + n w2)

    ModelParameters with_phase(const Phase& p) const {
        ModelParameters out = *this;
        out.phase = p;
        return out;
    }
    ModelParameters with_energy(double e) const {
        ModelParameters out = *this;
        out.energy = e;
        return out;
    }
};

/// Raised by assemble_jacobi when some orbit weight dips below the positivity
/// floor; carries the offending lattice site.
class WeightFloorError : public std::runtime_error {
public:
    WeightFloorError(long long site, double value, double floor);
    long long site() const { return site_; }
    double value() const { return value_; }

private:
    long long site_;
    double value_;
};

/// Dirichlet restriction of H(lambda, E) to the interval: diagonal
/// lambda v(x+n w1) - E w(y+n w2), hopping -1, couplings across the boundary
/// dropped.
TridiagonalMatrix assemble_H(const ModelParameters& p, const LatticeInterval& interval);

/// Restriction of the Jacobi transform W^{-1/2} H0 W^{-1/2}: diagonal
/// lambda v_n / w_n, off-diagonal -1/sqrt(w_n w_{n+1}).  The energy parameter
/// plays no role here.  Throws WeightFloorError if any w_n < floor.
TridiagonalMatrix assemble_jacobi(const ModelParameters& p, const LatticeInterval& interval,
                                  double floor);

/// sum_n u_n h_n w_n
double weighted_inner_product(std::span<const double> u, std::span<const double> h,
                              std::span<const double> w_samples);

enum class ScalingRegime { Coupling, Energy };

/// lambda^{-1} H or E^{-1} H on the interval, depending on the regime.
TridiagonalMatrix scaled_H(const ModelParameters& p, const LatticeInterval& interval,
                           ScalingRegime regime);

/// Orbit samples of the weight over the interval.
std::vector<double> weight_samples(const ModelParameters& p, const LatticeInterval& interval);

}  // namespace qplocal
