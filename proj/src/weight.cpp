#include "qplocal/weight.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qplocal/frequency.hpp"

namespace qplocal {

double WeightFunction::distance_to_zeros(double y) const {
    if (zeros.empty()) return 1.0;
    double best = 0.5;
    for (const auto& z : zeros) best = std::min(best, torus_norm(y - z.location));
    return best;
}

double WeightFunction::lower_bound_slack(double y) const {
    return std::abs(base.evaluate(y)) -
           lower_constant * std::pow(distance_to_zeros(y), static_cast<double>(max_order));
}

namespace {

// Golden-section minimization of w on [lo, hi] (coordinates may leave [0,1);
// evaluation is periodic anyway).
double minimize(const AnalyticTorusFunction& w, double lo, double hi) {
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = w.evaluate(c), fd = w.evaluate(d);
    for (int it = 0; it < 200 && (b - a) > 1e-15; ++it) {
        if (fc < fd) {
            b = d; d = c; fd = fc;
            c = b - inv_phi * (b - a);
            fc = w.evaluate(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + inv_phi * (b - a);
            fd = w.evaluate(d);
        }
    }
    return 0.5 * (a + b);
}

// Vanishing order from log-log slopes over three dyadic radii, averaged over
// both sides of the zero.  Ties round toward the larger order.
int estimate_order(const AnalyticTorusFunction& w, double zero, double r0) {
    double slopes = 0.0;
    int count = 0;
    double r = r0;
    double prev = 0.5 * (w.evaluate(zero + r) + w.evaluate(zero - r));
    for (int i = 0; i < 2; ++i) {
        double rn = r / 2.0;
        double next = 0.5 * (w.evaluate(zero + rn) + w.evaluate(zero - rn));
        if (next <= 0.0 || prev <= 0.0) break;
        slopes += std::log(prev / next) / std::numbers::ln2;
        ++count;
        r = rn;
        prev = next;
    }
    if (count == 0) return 1;
    double s = slopes / count;
    double frac = s - std::floor(s);
    if (std::abs(frac - 0.5) < 0.05) return static_cast<int>(std::ceil(s));
    return static_cast<int>(std::lround(s));
}

}  // namespace

WeightFunction weight_zero_analysis(const AnalyticTorusFunction& w, double grid_resolution) {
    if (!(grid_resolution > 0.0) || grid_resolution > 1e-4)
        throw std::invalid_argument("weight_zero_analysis: grid resolution must be in (0, 1e-4]");

    const int n = static_cast<int>(std::ceil(1.0 / grid_resolution));
    const double step = 1.0 / n;

    std::vector<double> values(n);
    double max_value = 0.0;
    for (int j = 0; j < n; ++j) {
        double v = w.evaluate(static_cast<double>(j) * step);
        if (v < -1e-10 * (1.0 + w.max_amplitude()))
            throw std::invalid_argument("weight_zero_analysis: weight is negative on the grid");
        values[j] = v;
        max_value = std::max(max_value, v);
    }
    if (max_value < 1e-14)
        throw std::invalid_argument("weight_zero_analysis: weight is identically zero");

    // Any zero of order >= 2 keeps w below (curvature/2) * d^2 nearby, so a
    // second-derivative bound from the modes gives a self-scaling threshold.
    double curvature = 0.0;
    for (const auto& [k, c] : w.modes()) {
        double f = 2.0 * std::numbers::pi * k;
        curvature += f * f * std::abs(c);
    }
    const double threshold = std::max(4.0 * curvature * step * step, 1e-13 * max_value);

    // Group consecutive below-threshold grid points and refine each group's
    // argmin by golden section.
    WeightFunction out;
    out.base = w;
    std::vector<int> argmins;
    int j = 0;
    while (j < n) {
        if (values[j] > threshold) { ++j; continue; }
        int best = j;
        int k = j;
        while (k < n && values[k] <= threshold) {
            if (values[k] < values[best]) best = k;
            ++k;
        }
        argmins.push_back(best);
        j = k;
    }
    // A run may wrap around the 1-boundary; merge first and last.
    if (argmins.size() >= 2 && values[0] <= threshold && values[n - 1] <= threshold) {
        int first = argmins.front(), last = argmins.back();
        argmins.erase(argmins.begin());
        argmins.back() = values[last] < values[first] ? last : first;
    }

    for (int a : argmins) {
        double center = static_cast<double>(a) * step;
        double refined = mod1(minimize(w, center - step, center + step));
        out.zeros.push_back({refined, 0});
    }

    // Radius for the order fit: clear of both the location error and the
    // nearest other zero.
    double separation = 1.0;
    for (size_t i = 0; i < out.zeros.size(); ++i)
        for (size_t l = i + 1; l < out.zeros.size(); ++l)
            separation = std::min(separation,
                                  torus_norm(out.zeros[i].location - out.zeros[l].location));
    double r0 = std::min(1e-2, separation / 8.0);

    out.max_order = 0;
    for (auto& z : out.zeros) {
        z.order = estimate_order(w, z.location, r0);
        out.max_order = std::max(out.max_order, z.order);
    }

    // c_w = grid minimum of w / min_i ||y - y_i||^{C_w}.  Points sitting on a
    // zero contribute 0/0 and are skipped.
    double cw = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        double y = static_cast<double>(i) * step;
        double dist = out.distance_to_zeros(y);
        if (dist < 0.5 * step) continue;
        double denom = std::pow(dist, static_cast<double>(out.max_order));
        if (denom <= 0.0) continue;
        cw = std::min(cw, values[i] / denom);
    }
    out.lower_constant = std::isfinite(cw) ? cw : 0.0;
    return out;
}

}  // namespace qplocal
