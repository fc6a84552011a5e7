#include "qplocal/coupling.hpp"

#include <cmath>

namespace qplocal {

bool covers(const LatticeInterval& interval, std::span<const SubIntervalReport> subs,
            int sub_scale, long long* uncovered) {
    const double quarter = static_cast<double>(sub_scale) / 4.0;
    for (long long k = interval.a; k <= interval.b; ++k) {
        long long lo = std::max(interval.a, static_cast<long long>(std::ceil(k - quarter)));
        long long hi = std::min(interval.b, static_cast<long long>(std::floor(k + quarter)));
        bool covered = false;
        for (const auto& sub : subs) {
            if (sub.window.a <= lo && hi <= sub.window.b) {
                covered = true;
                break;
            }
        }
        if (!covered) {
            if (uncovered) *uncovered = k;
            return false;
        }
    }
    return true;
}

PasteVerdict paste_intervals(const TridiagonalMatrix& h_full, const LatticeInterval& interval,
                             std::span<const SubIntervalReport> subs, int sub_scale, double b,
                             double gamma) {
    if (h_full.size() != interval.size())
        throw std::invalid_argument("paste_intervals: interval/matrix size mismatch");
    if (sub_scale < 2) throw std::invalid_argument("paste_intervals: sub scale must be >= 2");

    PasteVerdict verdict;

    // Sub-reports must be good verdicts computed at the declared parameters
    // (norm threshold e^{M^b}, decay rate gamma beyond M/10).
    for (std::size_t i = 0; i < subs.size(); ++i) {
        const auto& sub = subs[i];
        bool parameters_match = sub.verdict.b == b && sub.verdict.gamma == gamma &&
                                sub.verdict.scale == static_cast<double>(sub_scale);
        if (!interval.contains(sub.window) || !parameters_match || !sub.verdict.good()) {
            verdict.status = PasteVerdict::Status::BadSubInterval;
            verdict.offending_report = i;
            return verdict;
        }
    }

    long long uncovered = 0;
    if (!covers(interval, subs, sub_scale, &uncovered)) {
        verdict.status = PasteVerdict::Status::CoveringViolation;
        verdict.uncovered_site = uncovered;
        return verdict;
    }

    GreensMatrix g = invert_tridiagonal(h_full, interval);
    verdict.norm_value = g.operator_norm;
    verdict.norm_ok = g.operator_norm <= std::exp(static_cast<double>(sub_scale));

    const double region = static_cast<double>(interval.size()) / 10.0;
    const std::size_t n = g.size();
    verdict.worst_ratio = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double d = std::abs(static_cast<double>(i) - static_cast<double>(j));
            if (d <= region) continue;
            double ratio = std::abs(g.entries[i][j]) / std::exp(-d / 4.0);
            if (ratio > verdict.worst_ratio) {
                verdict.worst_ratio = ratio;
                verdict.worst_pair = {interval.site(i), interval.site(j)};
            }
        }
    }
    verdict.decay_ok = verdict.worst_ratio <= 1.0;
    return verdict;
}

std::vector<LatticeInterval> covering_windows(const LatticeInterval& interval, int sub_scale) {
    const long long n = static_cast<long long>(interval.size());
    const long long m = sub_scale;
    std::vector<LatticeInterval> out;
    if (m >= n) {
        out.push_back(interval);
        return out;
    }
    const long long stride = std::max<long long>(1, m / 2);
    for (long long start = interval.a; start + m - 1 <= interval.b; start += stride)
        out.push_back({start, start + m - 1});
    if (out.empty() || out.back().b != interval.b)
        out.push_back({interval.b - m + 1, interval.b});
    return out;
}

}  // namespace qplocal
