#pragma once

#include <cstdint>
#include <utility>

namespace qplocal {

/// Distance to the nearest integer.
double torus_norm(double t);

/// Canonical representative of t modulo 1 in [0, 1).
double mod1(double t);

/// Point on the 2-torus, stored as canonical representatives in [0, 1).
struct Phase {
    double x = 0.0;
    double y = 0.0;

    Phase() = default;
    Phase(double x_, double y_) : x(mod1(x_)), y(mod1(y_)) {}
};

/// Rotation vector (w1, w2) on the 2-torus together with the Diophantine
/// parameters it is certified against: |l.w| > dc_constant * |l|^{-dc_exponent}
/// for all 0 < |l|_1 <= test radius.
struct FrequencyVector {
    double w1 = 0.0;
    double w2 = 0.0;
    double dc_constant = 1e-3;
    double dc_exponent = 3.0;
};

struct DiophantineMargin {
    long long l1 = 0;  ///< minimizing integer vector
    long long l2 = 0;
    double margin = 0.0;       ///< min over 0 < |l|_1 <= radius of ||l.w|| |l|^A
    double torus_distance = 0.0;  ///< ||l.w|| at the minimizer
    bool certified = false;       ///< margin > dc_constant
};

/// Exhaustive scan over 0 < |l|_1 <= radius.  |l|_1 = |l1| + |l2|, which makes
/// the radius-1 shell exactly the four unit vectors.
DiophantineMargin diophantine_margin(const FrequencyVector& omega, long long radius);

/// Golden-mean / sqrt(2) frequency pair used by the calibration family.
FrequencyVector calibration_frequencies();

/// n-th point of the torus rotation orbit: (x + n w1, y + n w2) mod 1.
/// The products n*w are split into exact high/low parts (fma) before the
/// reduction, so |n| up to 1e9 stays accurate to well below 1e-6.
Phase orbit(const Phase& p, const FrequencyVector& omega, long long n);

}  // namespace qplocal
