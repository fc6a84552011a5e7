#include "qplocal/perturbation.hpp"

#include <cmath>

namespace qplocal {

namespace {

// Worst |G(m,n)| / (amp * e^{-rate |m-n|}) over |m-n| > region.
double worst_decay_ratio(const GreensMatrix& g, double amp, double rate, double region) {
    const std::size_t n = g.size();
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double d = std::abs(static_cast<double>(i) - static_cast<double>(j));
            if (d <= region) continue;
            worst = std::max(worst, std::abs(g.entries[i][j]) / (amp * std::exp(-rate * d)));
        }
    return worst;
}

}  // namespace

PerturbationVerdict perturbation_verify(const PerturbationInstance& instance) {
    const std::size_t n = instance.diagonal.size();
    if (instance.perturbed_diagonal.size() != n || instance.off_diagonal.size() + 1 != n)
        throw std::invalid_argument("perturbation_verify: inconsistent dimensions");
    if (instance.interval.size() != n)
        throw std::invalid_argument("perturbation_verify: interval size mismatch");

    PerturbationVerdict v;

    double sup_diff = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        sup_diff = std::max(sup_diff,
                            std::abs(instance.perturbed_diagonal[i] - instance.diagonal[i]));
    v.perturbation_small = sup_diff <= instance.epsilon;

    GreensMatrix base = invert_tridiagonal(
        TridiagonalMatrix(instance.diagonal, instance.off_diagonal), instance.interval);
    v.base_norm_ok = base.operator_norm < instance.norm_bound;
    v.base_decay_ok = worst_decay_ratio(base, instance.amplitude, instance.rate,
                                        instance.decay_region) < 1.0;

    v.smallness = instance.epsilon * static_cast<double>(n) * instance.norm_bound *
                  instance.norm_bound * std::exp(2.0 * instance.rate * instance.decay_region);
    v.smallness_ok = v.smallness < 0.5;

    if (!v.hypotheses_ok()) {
        v.status = PerturbationVerdict::Status::HypothesisNotSatisfied;
        return v;
    }

    GreensMatrix perturbed = invert_tridiagonal(
        TridiagonalMatrix(instance.perturbed_diagonal, instance.off_diagonal),
        instance.interval);
    v.perturbed_norm = perturbed.operator_norm;
    v.norm_conclusion = perturbed.operator_norm < 2.0 * instance.norm_bound;
    v.worst_decay_ratio = worst_decay_ratio(perturbed, instance.amplitude + 1.0, instance.rate,
                                            instance.decay_region);
    v.decay_conclusion = v.worst_decay_ratio < 1.0;

    v.status = (v.norm_conclusion && v.decay_conclusion)
                   ? PerturbationVerdict::Status::ConclusionsHold
                   : PerturbationVerdict::Status::Falsified;
    return v;
}

}  // namespace qplocal
