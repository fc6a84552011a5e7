#include "qplocal/msa.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>

#include "qplocal/coupling.hpp"
#include "qplocal/parallel.hpp"

namespace qplocal {

std::size_t PhaseSampler::count() const {
    if (kind == Kind::Grid)
        return static_cast<std::size_t>(resolution) * static_cast<std::size_t>(resolution);
    return samples;
}

Phase PhaseSampler::phase_at(std::size_t index) const {
    if (kind == Kind::Grid) {
        std::size_t i = index % static_cast<std::size_t>(resolution);
        std::size_t j = index / static_cast<std::size_t>(resolution);
        double r = static_cast<double>(resolution);
        return Phase((static_cast<double>(i) + 0.5) / r, (static_cast<double>(j) + 0.5) / r);
    }
    // SplitMix-style per-index stream: phases depend on (seed, index) only.
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
    auto next = [&z]() {
        z += 0x9e3779b97f4a7c15ull;
        std::uint64_t x = z;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        x ^= x >> 31;
        return static_cast<double>(x >> 11) / 9007199254740992.0;
    };
    double x = next();
    double y = next();
    return Phase(x, y);
}

std::string to_string(PhaseClass c) {
    switch (c) {
        case PhaseClass::Good: return "good";
        case PhaseClass::Singular: return "singular";
        case PhaseClass::NormFailure: return "norm";
        case PhaseClass::DecayFailure: return "decay";
    }
    return "unknown";
}

PhaseClass classify_phase(const ModelParameters& p, int scale, const MsaExponents& exps) {
    GreensMatrix g;
    try {
        g = greens(p, LatticeInterval::radius(scale));
    } catch (const SingularRestrictionError&) {
        return PhaseClass::Singular;
    }
    GoodnessVerdict v = verify_ldt_bounds(g, exps.b, exps.gamma,
                                          static_cast<double>(scale), exps.prefactor);
    if (!v.norm_ok) return PhaseClass::NormFailure;
    if (!v.decay_ok) return PhaseClass::DecayFailure;
    return PhaseClass::Good;
}

BadSetReport bad_set_estimate(const ModelParameters& p, int scale, const PhaseSampler& sampler,
                              const MsaExponents& exps, int workers) {
    if (sampler.kind == PhaseSampler::Kind::Grid && sampler.resolution < 64)
        throw std::invalid_argument("bad_set_estimate: grid resolution must be >= 64");
    if (sampler.kind == PhaseSampler::Kind::MonteCarlo && sampler.samples < 1000)
        throw std::invalid_argument("bad_set_estimate: need >= 1000 Monte Carlo phases");

    BadSetReport report;
    report.scale = scale;
    report.energy = p.energy;
    report.sampler = sampler;
    report.samples = sampler.count();
    report.exponents = exps;
    report.threshold = std::exp(-std::pow(static_cast<double>(scale), exps.kappa));

    std::vector<PhaseClass> classes(report.samples);
    parallel_for_index(report.samples, workers, [&](std::size_t i) {
        classes[i] = classify_phase(p.with_phase(sampler.phase_at(i)), scale, exps);
    });

    for (std::size_t i = 0; i < report.samples; ++i) {
        if (classes[i] == PhaseClass::Good) continue;
        ++report.bad_count;
        Phase ph = sampler.phase_at(i);
        report.bad_cells.push_back({ph.x, ph.y, classes[i]});
    }
    report.bad_fraction =
        static_cast<double>(report.bad_count) / static_cast<double>(report.samples);
    report.std_error = std::sqrt(report.bad_fraction * (1.0 - report.bad_fraction) /
                                 static_cast<double>(report.samples));
    return report;
}

CellSet::CellSet(int resolution, const std::vector<BadCell>& cells) : resolution_(resolution) {
    cells_.reserve(cells.size());
    for (const auto& c : cells) {
        auto i = static_cast<std::uint64_t>(mod1(c.x) * resolution_);
        auto j = static_cast<std::uint64_t>(mod1(c.y) * resolution_);
        cells_.push_back(i * static_cast<std::uint64_t>(resolution_) + j);
    }
    std::sort(cells_.begin(), cells_.end());
    cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());
}

CellSet CellSet::from_report(const BadSetReport& report) {
    int resolution = report.sampler.kind == PhaseSampler::Kind::Grid
                         ? report.sampler.resolution
                         : 1024;
    return CellSet(resolution, report.bad_cells);
}

bool CellSet::contains(const Phase& p) const {
    auto i = static_cast<std::uint64_t>(p.x * resolution_);
    auto j = static_cast<std::uint64_t>(p.y * resolution_);
    return std::binary_search(cells_.begin(), cells_.end(),
                              i * static_cast<std::uint64_t>(resolution_) + j);
}

InitialScaleVerdict initial_scale_check(const ModelParameters& p, int scale,
                                        const MsaExponents& exps, double lambda0_proxy) {
    if (std::abs(p.coupling) < lambda0_proxy)
        throw std::invalid_argument("initial_scale_check: |lambda| is below the proxy " +
                                    std::to_string(lambda0_proxy));

    InitialScaleVerdict verdict;
    verdict.regime = std::abs(p.energy) <= std::abs(p.coupling) ? 1 : 2;
    const double regime_scale = verdict.regime == 1 ? std::abs(p.coupling) : std::abs(p.energy);
    const double window = std::pow(std::log(regime_scale), 1.0 / (2.0 * exps.kappa));
    if (static_cast<double>(scale) > window)
        throw std::invalid_argument("initial_scale_check: scale " + std::to_string(scale) +
                                    " exceeds the regime window " + std::to_string(window));

    verdict.sublevel_threshold =
        std::exp(-std::pow(static_cast<double>(scale), 4.0 * exps.kappa / 3.0));

    // Scaled diagonal margin: v - (E/lambda) w in regime 1, (lambda/E) v - w
    // in regime 2.
    verdict.escapes_sublevel = true;
    verdict.min_margin = std::numeric_limits<double>::infinity();
    for (long long n = -scale; n <= scale; ++n) {
        Phase ph = orbit(p.phase, p.omega, n);
        double margin;
        if (verdict.regime == 1)
            margin = std::abs(p.v.evaluate(ph.x) -
                              (p.energy / p.coupling) * p.w.base.evaluate(ph.y));
        else
            margin = std::abs((p.coupling / p.energy) * p.v.evaluate(ph.x) -
                              p.w.base.evaluate(ph.y));
        if (margin < verdict.min_margin) {
            verdict.min_margin = margin;
            if (margin < verdict.sublevel_threshold) {
                verdict.escapes_sublevel = false;
                verdict.resonance_site = n;
            }
        }
    }
    if (!verdict.escapes_sublevel) return verdict;

    ScalingRegime regime =
        verdict.regime == 1 ? ScalingRegime::Coupling : ScalingRegime::Energy;
    try {
        GreensMatrix g = invert_tridiagonal(scaled_H(p, LatticeInterval::radius(scale), regime),
                                            LatticeInterval::radius(scale));
        verdict.bounds =
            verify_ldt_bounds(g, exps.b, 1.0, static_cast<double>(scale), exps.prefactor);
        verdict.bounds_checked = true;
    } catch (const SingularRestrictionError&) {
        verdict.bounds_checked = true;  // singular counts as a failed bound
    }
    verdict.passed = verdict.escapes_sublevel && verdict.bounds.good();
    return verdict;
}

OrbitHitReport orbit_hit_count(const Phase& start, const FrequencyVector& omega,
                               long long length, const std::function<bool(const Phase&)>& bad,
                               double delta) {
    OrbitHitReport report;
    report.start = start;
    report.length = length;
    report.delta = delta;
    report.bound = std::pow(static_cast<double>(length), 1.0 - delta);

    long long run = 0;
    for (long long k = 1; k <= length; ++k) {
        if (bad(orbit(start, omega, k))) {
            ++report.hits;
            report.longest_clear_run = std::max(report.longest_clear_run, run);
            run = 0;
        } else {
            ++run;
        }
    }
    report.longest_clear_run = std::max(report.longest_clear_run, run);
    return report;
}

void ScaleLadder::validate() const {
    if (scales.empty()) throw std::invalid_argument("ScaleLadder: no scales");
    const auto& e = exponents;
    if (!(e.kappa > 0.0 && e.kappa < 1.0 && e.b > 0.0 && e.b < 1.0 && e.delta > 0.0 &&
          e.delta < 1.0))
        throw std::invalid_argument("ScaleLadder: exponents must lie in (0,1)");
    if (!(2.0 * e.kappa < e.b))
        throw std::invalid_argument("ScaleLadder: requires 2 kappa < b");
    if (!(e.b > 1.0 - e.delta * e.delta))
        throw std::invalid_argument("ScaleLadder: requires b > 1 - delta^2");
    for (std::size_t i = 0; i < scales.size(); ++i) {
        if (scales[i] < 2) throw std::invalid_argument("ScaleLadder: scales must be >= 2");
        if (i == 0) continue;
        if (scales[i] <= scales[i - 1])
            throw std::invalid_argument("ScaleLadder: scales must increase");
        double cap = std::pow(static_cast<double>(scales[i - 1]),
                              1.0 / (e.delta * e.delta));
        if (static_cast<double>(scales[i]) > cap)
            throw std::invalid_argument("ScaleLadder: scale " + std::to_string(scales[i]) +
                                        " exceeds the induction window " + std::to_string(cap));
    }
}

namespace {

// Largest number of pairwise-disjoint windows among the flagged ones
// (greedy by right endpoint).
std::size_t disjoint_count(std::vector<LatticeInterval> windows) {
    std::sort(windows.begin(), windows.end(),
              [](const LatticeInterval& u, const LatticeInterval& v) { return u.b < v.b; });
    std::size_t count = 0;
    long long last_end = std::numeric_limits<long long>::min();
    for (const auto& w : windows) {
        if (w.a > last_end) {
            ++count;
            last_end = w.b;
        }
    }
    return count;
}

}  // namespace

std::vector<ScaleReport> inductive_scale_verify(const ModelParameters& p,
                                                const ScaleLadder& ladder,
                                                const PhaseSampler& sampler,
                                                long long work_budget, int workers) {
    ladder.validate();
    const MsaExponents& exps = ladder.exponents;

    std::vector<ScaleReport> reports;
    std::atomic<long long> budget{work_budget};

    // Initial rung: direct estimate.
    {
        BadSetReport base = bad_set_estimate(p, ladder.scales[0], sampler, exps, workers);
        ScaleReport r;
        r.scale = base.scale;
        r.phases = base.samples;
        r.bad_count = base.bad_count;
        r.bad_fraction = base.bad_fraction;
        r.std_error = base.std_error;
        r.threshold = base.threshold;
        r.within_threshold = base.bad_fraction < base.threshold;
        budget -= static_cast<long long>(base.samples);
        reports.push_back(r);
        if (!r.within_threshold)
            throw std::runtime_error(
                "inductive_scale_verify: initial scale fails its own statistics");
    }

    for (std::size_t s = 1; s < ladder.scales.size(); ++s) {
        const int scale_n = ladder.scales[s];
        const int prev = ladder.scales[s - 1];
        const LatticeInterval full = LatticeInterval::radius(scale_n);

        // Paper screening size is N^{delta/5}; desk scales clamp it to at
        // least 8 sites and never beyond the previous window.
        int m0 = static_cast<int>(std::pow(static_cast<double>(scale_n), exps.delta / 5.0));
        m0 = std::clamp(m0, 8, 2 * prev + 1);

        ScaleReport r;
        r.scale = scale_n;
        r.previous_scale = prev;
        r.sub_scale = m0;
        r.threshold = std::exp(-std::pow(static_cast<double>(scale_n), exps.kappa));
        r.disjoint_budget = std::pow(static_cast<double>(scale_n), 1.0 - exps.delta);

        const std::vector<LatticeInterval> windows = covering_windows(full, m0);
        const std::size_t total = sampler.count();

        struct PhaseOutcome {
            bool done = false;
            bool good = false;
            bool budget_exceeded = false;
            bool covering_failed = false;
            bool paste_failed = false;
            std::size_t singular_windows = 0;
        };
        std::vector<PhaseOutcome> outcomes(total);

        parallel_for_index(total, workers, [&](std::size_t idx) {
            long long cost = static_cast<long long>(windows.size()) + 1;
            if (budget.fetch_sub(cost) < cost) return;  // out of work budget
            PhaseOutcome& out = outcomes[idx];
            out.done = true;

            ModelParameters local = p.with_phase(sampler.phase_at(idx));
            std::vector<SubIntervalReport> good_subs;
            std::vector<LatticeInterval> bad_windows;
            for (const auto& win : windows) {
                bool good = false;
                try {
                    GreensMatrix g =
                        invert_tridiagonal(assemble_H(local, win), win);
                    GoodnessVerdict v =
                        verify_ldt_bounds(g, exps.b, exps.gamma,
                                          static_cast<double>(m0), exps.prefactor);
                    good = v.good();
                    if (good) good_subs.push_back({win, v});
                } catch (const SingularRestrictionError&) {
                    ++out.singular_windows;
                }
                if (!good) bad_windows.push_back(win);
            }

            if (static_cast<double>(disjoint_count(bad_windows)) > r.disjoint_budget) {
                out.budget_exceeded = true;
                return;
            }
            if (!covers(full, good_subs, m0)) {
                out.covering_failed = true;
                return;
            }
            PasteVerdict paste = paste_intervals(assemble_H(local, full), full, good_subs, m0,
                                                 exps.b, exps.gamma);
            if (!paste.pasted()) {
                out.paste_failed = true;
                return;
            }
            out.good = true;
        });

        for (const auto& out : outcomes) {
            if (!out.done) {
                r.work_budget_exhausted = true;
                continue;
            }
            ++r.phases;
            r.singular_windows += out.singular_windows;
            if (out.good) continue;
            ++r.bad_count;
            if (out.budget_exceeded) ++r.budget_exceeded;
            if (out.covering_failed) ++r.covering_failures;
            if (out.paste_failed) ++r.paste_failures;
        }
        if (r.phases > 0) {
            r.bad_fraction = static_cast<double>(r.bad_count) / static_cast<double>(r.phases);
            r.std_error = std::sqrt(r.bad_fraction * (1.0 - r.bad_fraction) /
                                    static_cast<double>(r.phases));
        }
        r.within_threshold = r.bad_fraction < r.threshold;
        reports.push_back(r);
    }
    return reports;
}

}  // namespace qplocal
