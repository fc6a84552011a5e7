#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qplocal/assemble.hpp"
#include "qplocal/greens.hpp"

namespace qplocal {

/// Exponent block shared by the large-deviation checks.  The defaults are
/// desk-scale relaxations (recorded in every report): kappa far above
/// delta^2/25, and delta chosen so b > 1 - delta^2 holds alongside 2 kappa < b.
struct MsaExponents {
    double kappa = 0.04;
    double b = 0.9;
    double delta = 0.32;
    double gamma = 0.5;      ///< off-diagonal decay rate of the goodness bound
    double prefactor = 10.0; ///< prefactor of the goodness bound
};

/// Deterministic phase sampler: grid cells or seeded per-index Monte Carlo.
/// phase_at(k) depends only on (spec, k), so batching order never matters.
struct PhaseSampler {
    enum class Kind { Grid, MonteCarlo };
    Kind kind = Kind::Grid;
    int resolution = 32;
    std::size_t samples = 1000;
    std::uint64_t seed = 0;

    static PhaseSampler grid(int resolution) { return {Kind::Grid, resolution, 0, 0}; }
    static PhaseSampler monte_carlo(std::size_t samples, std::uint64_t seed) {
        return {Kind::MonteCarlo, 0, samples, seed};
    }

    std::size_t count() const;
    Phase phase_at(std::size_t index) const;
};

enum class PhaseClass { Good, Singular, NormFailure, DecayFailure };

std::string to_string(PhaseClass c);

/// Ground-truth classification of one phase at scale N: invert H on [-N, N]
/// and test the norm/decay bounds directly.
PhaseClass classify_phase(const ModelParameters& p, int scale, const MsaExponents& exps);

struct BadCell {
    double x = 0.0;
    double y = 0.0;
    PhaseClass reason = PhaseClass::Good;
};

/// Empirical estimate of the exceptional phase set at one scale and energy.
struct BadSetReport {
    int scale = 0;
    double energy = 0.0;
    PhaseSampler sampler;
    std::size_t samples = 0;
    std::size_t bad_count = 0;
    double bad_fraction = 0.0;
    double std_error = 0.0;
    double threshold = 0.0;  ///< e^{-N^kappa}
    MsaExponents exponents;
    std::vector<BadCell> bad_cells;
};

BadSetReport bad_set_estimate(const ModelParameters& p, int scale, const PhaseSampler& sampler,
                              const MsaExponents& exps, int workers = 0);

/// Cell-membership predicate built from persisted bad cells.
class CellSet {
public:
    CellSet() = default;
    CellSet(int resolution, const std::vector<BadCell>& cells);
    static CellSet from_report(const BadSetReport& report);

    bool contains(const Phase& p) const;
    std::size_t size() const { return cells_.size(); }
    int resolution() const { return resolution_; }

private:
    int resolution_ = 1024;
    std::vector<std::uint64_t> cells_;  // sorted i * resolution + j
};

struct InitialScaleVerdict {
    int regime = 1;  ///< 1: |E| <= |lambda| (coupling), 2: |E| > |lambda| (energy)
    double sublevel_threshold = 0.0;  ///< e^{-N^{4 kappa / 3}}
    bool escapes_sublevel = false;
    long long resonance_site = 0;  ///< offending site when trapped
    double min_margin = 0.0;       ///< min over the window of the scaled diagonal
    GoodnessVerdict bounds;        ///< on the scaled inverse, rate 1, prefactor 10
    bool bounds_checked = false;
    bool passed = false;  ///< escapes and both bounds hold
};

/// Initial-scale test: does the phase clear the diagonal sublevel set at
/// threshold e^{-N^{4 kappa/3}}, and if so does the scaled inverse satisfy
/// the norm/decay bounds.  Throws std::invalid_argument when |lambda| is
/// below the proxy or N exceeds the regime window (log scale)^{1/(2 kappa)}.
InitialScaleVerdict initial_scale_check(const ModelParameters& p, int scale,
                                        const MsaExponents& exps, double lambda0_proxy = 1e3);

struct OrbitHitReport {
    Phase start;
    long long length = 0;       ///< K
    long long hits = 0;
    double bound = 0.0;         ///< K^{1-delta}
    long long longest_clear_run = 0;
    double delta = 0.0;
};

/// Counts orbit points landing in the bad set along k = 1..K.
OrbitHitReport orbit_hit_count(const Phase& start, const FrequencyVector& omega,
                               long long length, const std::function<bool(const Phase&)>& bad,
                               double delta);

/// Increasing scale list with the induction-window and exponent constraints
/// enforced by validate().
struct ScaleLadder {
    std::vector<int> scales;
    MsaExponents exponents;

    void validate() const;  ///< throws std::invalid_argument on violations
};

struct ScaleReport {
    int scale = 0;
    int previous_scale = 0;  ///< 0 on the initial rung
    int sub_scale = 0;       ///< M0 used for screening (0 on the initial rung)
    std::size_t phases = 0;
    std::size_t bad_count = 0;
    double bad_fraction = 0.0;
    double std_error = 0.0;
    double threshold = 0.0;      ///< e^{-N^kappa}
    double disjoint_budget = 0.0;  ///< N^{1-delta}
    std::size_t budget_exceeded = 0;     ///< phases with too many disjoint bad windows
    std::size_t covering_failures = 0;   ///< phases with no good covering
    std::size_t paste_failures = 0;      ///< phases whose pasted bounds failed
    std::size_t singular_windows = 0;
    bool within_threshold = false;
    bool work_budget_exhausted = false;  ///< scan stopped early; phases holds the count done
};

/// Scale-ladder verification: the first rung is a direct bad-set estimate;
/// every later rung screens size-M0 windows, checks the disjoint-bad budget,
/// pastes the good covering and records whether the scale-N conclusions hold.
/// work_budget caps the total number of matrix inversions across the run.
std::vector<ScaleReport> inductive_scale_verify(const ModelParameters& p,
                                                const ScaleLadder& ladder,
                                                const PhaseSampler& sampler,
                                                long long work_budget, int workers = 0);

}  // namespace qplocal
