#include "qplocal/sublevel.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace qplocal {

MeasureEstimate sublevel_measure(const AnalyticTorusFunction& v,
                                 const AnalyticTorusFunction& w, double ratio,
                                 double eps, const SamplerSpec& sampler) {
    if (!(eps > 0.0)) throw std::invalid_argument("sublevel_measure: eps must be positive");

    MeasureEstimate out;
    std::size_t hits = 0;

    if (sampler.kind == SamplerSpec::Kind::Grid) {
        const int n = sampler.resolution;
        if (n < 2) throw std::invalid_argument("sublevel_measure: grid resolution must be >= 2");
        constexpr double golden = 0.6180339887498949;

        // Precompute one row of w; the golden shift only moves x.
        std::vector<double> wrow(n);
        for (int j = 0; j < n; ++j)
            wrow[j] = w.evaluate((j + 0.5) / static_cast<double>(n));

        for (int j = 0; j < n; ++j) {
            double shift = std::fmod(golden * j, 1.0);
            double rw = ratio * wrow[j];
            for (int i = 0; i < n; ++i) {
                double x = (i + shift) / static_cast<double>(n);
                if (std::abs(v.evaluate(x) - rw) < eps) ++hits;
            }
        }
        out.samples = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    } else {
        if (sampler.samples < 1000)
            throw std::invalid_argument("sublevel_measure: need >= 1000 Monte Carlo samples");
        std::mt19937_64 rng(sampler.seed);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        for (std::size_t s = 0; s < sampler.samples; ++s) {
            double x = uni(rng);
            double y = uni(rng);
            if (std::abs(v.evaluate(x) - ratio * w.evaluate(y)) < eps) ++hits;
        }
        out.samples = sampler.samples;
    }

    double p = static_cast<double>(hits) / static_cast<double>(out.samples);
    out.value = p;
    out.std_error = std::sqrt(p * (1.0 - p) / static_cast<double>(out.samples));
    return out;
}

}  // namespace qplocal
