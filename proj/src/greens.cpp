#include "qplocal/greens.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qplocal/tridiag_eigen.hpp"
#include "qplocal/tridiag_solve.hpp"

namespace qplocal {

SingularRestrictionError::SingularRestrictionError(double condition)
    : std::runtime_error("restriction is numerically singular (condition estimate " +
                         std::to_string(condition) + ")"),
      condition_(condition) {}

double singular_condition_threshold() {
    return 1.0 / (10.0 * std::numeric_limits<double>::epsilon());
}

namespace {
constexpr std::size_t kDenseNormLimit = 5000;
}

GreensMatrix invert_tridiagonal(const TridiagonalMatrix& h, const LatticeInterval& interval) {
    const std::size_t n = h.size();
    if (interval.size() != n)
        throw std::invalid_argument("invert_tridiagonal: interval/matrix size mismatch");

    GreensMatrix g;
    g.interval = interval;

    if (n <= kDenseNormLimit) {
        std::vector<double> eigs = tridiagonal_eigenvalues(h);
        double smallest = std::numeric_limits<double>::infinity();
        double largest = 0.0;
        for (double e : eigs) {
            smallest = std::min(smallest, std::abs(e));
            largest = std::max(largest, std::abs(e));
        }
        g.condition_estimate =
            smallest > 0.0 ? largest / smallest : std::numeric_limits<double>::infinity();
        g.operator_norm =
            smallest > 0.0 ? 1.0 / smallest : std::numeric_limits<double>::infinity();
    }

    if (g.condition_estimate > singular_condition_threshold())
        throw SingularRestrictionError(g.condition_estimate);

    TridiagonalLDLT ldlt(h.diagonal, h.off_diagonal, 1e-10);
    TridiagonalLU<double> lu(h.diagonal, h.off_diagonal);
    if (!ldlt.valid() && lu.exact_singular())
        throw SingularRestrictionError(std::numeric_limits<double>::infinity());

    g.entries.assign(n, std::vector<double>(n, 0.0));
    std::vector<double> col(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::fill(col.begin(), col.end(), 0.0);
        col[j] = 1.0;
        if (ldlt.valid())
            ldlt.solve_in_place(col);
        else
            lu.solve_in_place(col);
        for (std::size_t i = 0; i < n; ++i) g.entries[i][j] = col[i];
    }

    double hs = 0.0;
    for (const auto& row : g.entries)
        for (double v : row) hs += v * v;
    g.hs_norm = std::sqrt(hs);

    if (n > kDenseNormLimit) {
        g.operator_norm = resolvent_norm(h, 0.0, 1e-6, 1000);
        g.condition_estimate = g.operator_norm * h.inf_norm();
        if (g.condition_estimate > singular_condition_threshold())
            throw SingularRestrictionError(g.condition_estimate);
    }
    return g;
}

GreensMatrix greens(const ModelParameters& p, const LatticeInterval& interval) {
    return invert_tridiagonal(assemble_H(p, interval), interval);
}

GoodnessVerdict verify_ldt_bounds(const GreensMatrix& g, double b, double gamma,
                                  std::optional<double> scale, double prefactor) {
    if (!(b > 0.0) || !(b < 1.0))
        throw std::invalid_argument("verify_ldt_bounds: b must lie in (0,1)");
    if (!(gamma > 0.0)) throw std::invalid_argument("verify_ldt_bounds: gamma must be positive");

    GoodnessVerdict verdict;
    verdict.b = b;
    verdict.gamma = gamma;
    verdict.scale = scale.value_or(g.default_scale());
    verdict.norm_value = g.operator_norm;
    verdict.norm_threshold = std::exp(std::pow(verdict.scale, b));
    verdict.norm_ok = g.operator_norm < verdict.norm_threshold;

    const double region = verdict.scale / 10.0;
    const std::size_t n = g.size();
    verdict.decay_ok = true;
    verdict.worst_ratio = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double dist = std::abs(static_cast<double>(i) - static_cast<double>(j));
            if (dist <= region) continue;
            double bound = prefactor * std::exp(-gamma * dist);
            double ratio = std::abs(g.entries[i][j]) / bound;
            if (ratio > verdict.worst_ratio) {
                verdict.worst_ratio = ratio;
                verdict.worst_pair = {g.interval.site(i), g.interval.site(j)};
            }
        }
    }
    verdict.decay_ok = verdict.worst_ratio < 1.0;
    return verdict;
}

DecayFit fit_exponential_profile(const std::vector<double>& distances,
                                 const std::vector<double>& magnitudes) {
    constexpr double kFloor = 1e-300;
    DecayFit fit;

    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < distances.size(); ++i) {
        if (magnitudes[i] < kFloor) {
            ++fit.clamped;
            continue;
        }
        xs.push_back(distances[i]);
        ys.push_back(std::log(magnitudes[i]));
    }
    fit.pairs = xs.size();
    if (fit.pairs < 5)
        throw std::invalid_argument("decay fit: fewer than 5 usable pairs in the fit region");

    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double n = static_cast<double>(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("decay fit: degenerate distance set");
    double slope = (n * sxy - sx * sy) / denom;
    double intercept = (sy - slope * sx) / n;

    fit.rate = -slope;
    fit.prefactor = std::exp(intercept);
    for (std::size_t i = 0; i < xs.size(); ++i)
        fit.residual = std::max(fit.residual, std::abs(ys[i] - (intercept + slope * xs[i])));
    fit.reliable = fit.residual <= 0.5;
    return fit;
}

DecayFit decay_fit(const GreensMatrix& g) {
    const std::size_t n = g.size();
    const double cutoff = static_cast<double>(n) / 10.0;
    std::vector<double> dist, mag;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double d = std::abs(static_cast<double>(i) - static_cast<double>(j));
            if (d <= cutoff) continue;
            dist.push_back(d);
            mag.push_back(std::abs(g.entries[i][j]));
        }
    }
    DecayFit fit = fit_exponential_profile(dist, mag);
    fit.cutoff = cutoff;
    return fit;
}

}  // namespace qplocal
