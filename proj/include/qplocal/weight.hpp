#pragma once

#include <vector>

#include "qplocal/torus_function.hpp"

namespace qplocal {

/// A nonnegative analytic weight with finitely many real zeros, plus the
/// quantities entering its polynomial lower bound
///   |w(y)| >= lower_constant * min_i ||y - y_i||^{max_order}.
struct WeightFunction {
    struct Zero {
        double location = 0.0;  ///< in [0, 1)
        int order = 0;          ///< vanishing order (even for nonnegative w)
    };

    AnalyticTorusFunction base;
    std::vector<Zero> zeros;
    int max_order = 0;           ///< C_w: all zero orders are <= this
    double lower_constant = 0.0; ///< c_w > 0

    double evaluate(double y) const { return base.evaluate(y); }
    double operator()(double y) const { return base.evaluate(y); }

    /// min_i ||y - y_i||; by convention 1 when there are no zeros, so the
    /// lower bound degenerates to |w| >= lower_constant.
    double distance_to_zeros(double y) const;

    /// Left side minus right side of the lower bound at y (>= 0 when it holds).
    double lower_bound_slack(double y) const;
};

/// Locates the real zeros of a nonnegative weight on a grid of the given
/// resolution, estimates each vanishing order from log-log slopes over three
/// dyadic radii (ties rounded up), and computes the lower-bound constant as
/// the grid minimum of w(y) / min_i ||y - y_i||^{C_w}.
///
/// Throws std::invalid_argument when w is identically zero or takes a
/// negative value on the grid.
WeightFunction weight_zero_analysis(const AnalyticTorusFunction& w,
                                    double grid_resolution = 5e-5);

}  // namespace qplocal
