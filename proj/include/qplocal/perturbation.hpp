#pragma once

#include <vector>

#include "qplocal/greens.hpp"
#include "qplocal/lattice.hpp"

namespace qplocal {

/// Inputs of the diagonal-perturbation check: T = D + S and T' = D' + S on
/// the same interval, with S the shared symmetric off-diagonal part.
struct PerturbationInstance {
    std::vector<double> diagonal;            ///< D
    std::vector<double> perturbed_diagonal;  ///< D'
    std::vector<double> off_diagonal;        ///< S (length size-1)
    LatticeInterval interval;
    double norm_bound = 0.0;   ///< B
    double decay_region = 0.0; ///< K: decay hypothesis applies to |m-n| > K
    double rate = 0.0;         ///< gamma
    double amplitude = 0.0;    ///< a
    double epsilon = 0.0;      ///< sup |D' - D| must stay below this
};

struct PerturbationVerdict {
    enum class Status {
        HypothesisNotSatisfied,  ///< instance rejected, nothing asserted
        ConclusionsHold,
        Falsified,  ///< hypotheses held but a conclusion failed; abort loudly
    };
    Status status = Status::HypothesisNotSatisfied;

    bool perturbation_small = false;  ///< |D'-D| < eps on the interval
    bool base_norm_ok = false;        ///< ||G|| < B
    bool base_decay_ok = false;       ///< |G(m,n)| < a e^{-gamma|m-n|} beyond K
    double smallness = 0.0;           ///< eps * N * B^2 * e^{2 gamma K}
    bool smallness_ok = false;        ///< smallness < 1/2

    bool norm_conclusion = false;   ///< ||G'|| < 2B
    bool decay_conclusion = false;  ///< |G'(m,n)| < (a+1) e^{-gamma|m-n|} beyond K
    double perturbed_norm = 0.0;
    double worst_decay_ratio = 0.0;

    bool hypotheses_ok() const {
        return perturbation_small && base_norm_ok && base_decay_ok && smallness_ok;
    }
};

/// Checks the hypotheses numerically and, when they hold, verifies the
/// perturbed Green's function conclusions ||G'|| < 2B and
/// |G'(m,n)| < (a+1) e^{-gamma |m-n|} for |m-n| > K.
PerturbationVerdict perturbation_verify(const PerturbationInstance& instance);

}  // namespace qplocal
