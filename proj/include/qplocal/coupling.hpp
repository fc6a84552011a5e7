#pragma once

#include <span>
#include <vector>

#include "qplocal/greens.hpp"
#include "qplocal/lattice.hpp"

namespace qplocal {

/// Goodness report for one sub-interval of a covering.
struct SubIntervalReport {
    LatticeInterval window;
    GoodnessVerdict verdict;
};

struct PasteVerdict {
    enum class Status {
        Ok,
        CoveringViolation,  ///< some site has no covering sub-interval
        BadSubInterval,     ///< a supplied report is not good
    };
    Status status = Status::Ok;
    long long uncovered_site = 0;        ///< set on CoveringViolation
    std::size_t offending_report = 0;    ///< set on BadSubInterval

    bool norm_ok = false;   ///< ||G_I|| <= e^M
    bool decay_ok = false;  ///< |G_I(m,n)| <= e^{-|m-n|/4} for |m-n| > N/10
    double norm_value = 0.0;
    double worst_ratio = 0.0;
    std::pair<long long, long long> worst_pair{0, 0};

    bool pasted() const { return status == Status::Ok && norm_ok && decay_ok; }
};

/// Covering check: every k in I has a sub-interval containing
/// [k - M/4, k + M/4] intersected with I.
bool covers(const LatticeInterval& interval, std::span<const SubIntervalReport> subs,
            int sub_scale, long long* uncovered = nullptr);

/// Verifies the interval-pasting conclusions: given an all-good covering of I
/// by size-M sub-intervals (norm bound e^{M^b}, decay 10 e^{-|m-n|/2} beyond
/// M/10), the direct inverse on I must satisfy ||G_I|| <= e^M and
/// |G_I(m,n)| <= e^{-|m-n|/4} for |m-n| > N/10 with N = |I|.
PasteVerdict paste_intervals(const TridiagonalMatrix& h_full, const LatticeInterval& interval,
                             std::span<const SubIntervalReport> subs, int sub_scale, double b,
                             double gamma = 0.5);

/// Sliding windows of the given size whose stride keeps the covering
/// condition satisfiable (stride <= M/2, final window flush right).
std::vector<LatticeInterval> covering_windows(const LatticeInterval& interval, int sub_scale);

}  // namespace qplocal
