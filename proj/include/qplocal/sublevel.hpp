#pragma once

#include <cstddef>
#include <cstdint>

#include "qplocal/torus_function.hpp"

namespace qplocal {

/// Phase-space sampler: a deterministic lattice (with a golden-ratio row
/// shift, so axis-aligned level sets are not aliased) or seeded Monte Carlo.
struct SamplerSpec {
    enum class Kind { Grid, MonteCarlo };
    Kind kind = Kind::Grid;
    int resolution = 2048;        ///< grid cells per axis
    std::size_t samples = 1 << 20;  ///< Monte Carlo draws
    std::uint64_t seed = 0;

    static SamplerSpec grid(int resolution) { return {Kind::Grid, resolution, 0, 0}; }
    static SamplerSpec monte_carlo(std::size_t samples, std::uint64_t seed) {
        return {Kind::MonteCarlo, 0, samples, seed};
    }
};

struct MeasureEstimate {
    double value = 0.0;       ///< estimated measure in [0, 1]
    double std_error = 0.0;   ///< binomial-proxy standard error
    std::size_t samples = 0;
};

/// Estimates mes{(x,y) in T^2 : |v(x) - ratio * w(y)| < eps}.
MeasureEstimate sublevel_measure(const AnalyticTorusFunction& v,
                                 const AnalyticTorusFunction& w, double ratio,
                                 double eps, const SamplerSpec& sampler = {});

}  // namespace qplocal
