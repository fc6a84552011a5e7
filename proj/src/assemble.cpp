#include "qplocal/assemble.hpp"

#include <cmath>
#include <string>

namespace qplocal {

double ModelParameters::potential_at(long long n) const {
    return coupling * v.evaluate(orbit(phase, omega, n).x);
}

double ModelParameters::weight_at(long long n) const {
    return w.base.evaluate(orbit(phase, omega, n).y);
}

WeightFloorError::WeightFloorError(long long site, double value, double floor)
    : std::runtime_error("weight " + std::to_string(value) + " at site " +
                         std::to_string(site) + " is below the positivity floor " +
                         std::to_string(floor)),
      site_(site),
      value_(value) {}

TridiagonalMatrix assemble_H(const ModelParameters& p, const LatticeInterval& interval) {
    const std::size_t n = interval.size();
    TridiagonalMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        long long site = interval.site(i);
        out.diagonal[i] = p.potential_at(site) - p.energy * p.weight_at(site);
        if (i + 1 < n) out.off_diagonal[i] = -1.0;
    }
    return out;
}

TridiagonalMatrix assemble_jacobi(const ModelParameters& p, const LatticeInterval& interval,
                                  double floor) {
    if (!(floor > 0.0)) throw std::invalid_argument("assemble_jacobi: floor must be positive");
    const std::size_t n = interval.size();

    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) {
        long long site = interval.site(i);
        w[i] = p.weight_at(site);
        if (w[i] < floor) throw WeightFloorError(site, w[i], floor);
    }

    TridiagonalMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.diagonal[i] = p.potential_at(interval.site(i)) / w[i];
        if (i + 1 < n) out.off_diagonal[i] = -1.0 / std::sqrt(w[i] * w[i + 1]);
    }
    return out;
}

double weighted_inner_product(std::span<const double> u, std::span<const double> h,
                              std::span<const double> w_samples) {
    if (u.size() != h.size() || u.size() != w_samples.size())
        throw std::invalid_argument("weighted_inner_product: dimension mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) acc += u[i] * h[i] * w_samples[i];
    return acc;
}

TridiagonalMatrix scaled_H(const ModelParameters& p, const LatticeInterval& interval,
                           ScalingRegime regime) {
    double scale = regime == ScalingRegime::Coupling ? p.coupling : p.energy;
    if (scale == 0.0)
        throw std::invalid_argument(regime == ScalingRegime::Coupling
                                        ? "scaled_H: coupling regime needs lambda != 0"
                                        : "scaled_H: energy regime needs E != 0");
    return assemble_H(p, interval).scaled(1.0 / scale);
}

std::vector<double> weight_samples(const ModelParameters& p, const LatticeInterval& interval) {
    std::vector<double> out(interval.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = p.weight_at(interval.site(i));
    return out;
}

}  // namespace qplocal
