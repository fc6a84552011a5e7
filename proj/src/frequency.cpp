#include "qplocal/frequency.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qplocal {

double mod1(double t) {
    double r = t - std::floor(t);
    if (r >= 1.0) r -= 1.0;  // floor rounding at negative epsilons
    if (r < 0.0) r += 1.0;
    return r;
}

double torus_norm(double t) {
    double r = mod1(t);
    return std::min(r, 1.0 - r);
}

DiophantineMargin diophantine_margin(const FrequencyVector& omega, long long radius) {
    if (radius < 1) throw std::invalid_argument("diophantine_margin: radius must be >= 1");

    DiophantineMargin best;
    best.margin = std::numeric_limits<double>::infinity();
    long long best_sup = 0;
    for (long long l1 = -radius; l1 <= radius; ++l1) {
        long long rem = radius - std::llabs(l1);
        for (long long l2 = -rem; l2 <= rem; ++l2) {
            if (l1 == 0 && l2 == 0) continue;
            double dist = torus_norm(static_cast<double>(l1) * omega.w1 +
                                     static_cast<double>(l2) * omega.w2);
            double norm1 = static_cast<double>(std::llabs(l1) + std::llabs(l2));
            double margin = dist * std::pow(norm1, omega.dc_exponent);
            long long sup = std::max(std::llabs(l1), std::llabs(l2));
            // Ties resolve toward the smallest resonance vector.
            if (margin < best.margin || (margin == best.margin && sup < best_sup)) {
                best.margin = margin;
                best.l1 = l1;
                best.l2 = l2;
                best.torus_distance = dist;
                best_sup = sup;
            }
        }
    }
    best.certified = best.margin > omega.dc_constant;
    return best;
}

FrequencyVector calibration_frequencies() {
    FrequencyVector omega;
    omega.w1 = (std::sqrt(5.0) - 1.0) / 2.0;
    omega.w2 = std::sqrt(2.0) - 1.0;
    omega.dc_constant = 1e-3;
    omega.dc_exponent = 3.0;
    return omega;
}

namespace {

// (t + n*w) mod 1 with the product split into rounded and residual parts.
// n is exactly representable, so fma(n, w, -hi) recovers the rounding error
// of hi = n*w; fmod(hi, 1) is exact for doubles.
double rotate(double t, double w, long long n) {
    double nd = static_cast<double>(n);
    double hi = nd * w;
    double lo = std::fma(nd, w, -hi);
    return mod1(std::fmod(hi, 1.0) + lo + t);
}

}  // namespace

Phase orbit(const Phase& p, const FrequencyVector& omega, long long n) {
    if (n == 0) return p;
    return Phase(rotate(p.x, omega.w1, n), rotate(p.y, omega.w2, n));
}

}  // namespace qplocal
