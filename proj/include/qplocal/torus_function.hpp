#pragma once

#include <complex>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace qplocal {

/// A 1-periodic real-analytic function stored as finitely many Fourier modes,
///   f(t) = sum_k c_k e^{2 pi i k t},
/// with hermitian symmetry c_{-k} = conj(c_k) so evaluations on the real line
/// are real to rounding.  Mode amplitudes are expected to satisfy the
/// exponential normalization |c_k| <= e^{-|k|}; functions exceeding it carry
/// an explicit decay constant (see decay_constant()).
class AnalyticTorusFunction {
public:
    using ModeMap = std::map<int, std::complex<double>>;

    /// What to do with a mode table that violates |c_k| <= e^{-|k|}.
    enum class Normalization {
        Require,  ///< throw std::invalid_argument
        Accept,   ///< keep amplitudes, record the decay constant
        Rescale,  ///< scale the whole function down until the bound holds
    };

    AnalyticTorusFunction() = default;

    /// Builds from a mode table.  Missing negative modes are filled in by
    /// hermitian symmetry; present ones must match their mirror to 1e-12.
    explicit AnalyticTorusFunction(const ModeMap& modes,
                                   Normalization policy = Normalization::Accept);

    static AnalyticTorusFunction constant(double value);
    static AnalyticTorusFunction cosine();        ///< cos(2 pi t)
    static AnalyticTorusFunction sine_squared();  ///< sin^2(2 pi t)

    /// Parses a named builtin: "cos", "sin2", "const".
    static std::optional<AnalyticTorusFunction> builtin(const std::string& name);

    double evaluate(double t) const;
    double operator()(double t) const { return evaluate(t); }

    const ModeMap& modes() const { return modes_; }
    int band() const { return band_; }
    double max_amplitude() const { return max_amplitude_; }

    /// Smallest C with |c_k| <= C e^{-|k|} for all stored modes (>= 0).
    double decay_constant() const { return decay_constant_; }
    bool rescaled() const { return rescale_factor_ != 1.0; }
    double rescale_factor() const { return rescale_factor_; }

    /// Upper bound on sup |f| from the stored amplitudes.
    double sup_bound() const;

    AnalyticTorusFunction scaled(double factor) const;
    AnalyticTorusFunction plus(const AnalyticTorusFunction& other, double own = 1.0,
                               double theirs = 1.0) const;

private:
    ModeMap modes_;
    int band_ = 0;
    double max_amplitude_ = 0.0;
    double decay_constant_ = 0.0;
    double rescale_factor_ = 1.0;
};

struct TruncationResult {
    AnalyticTorusFunction polynomial;
    int band;                 ///< band actually kept
    double error_bound;       ///< certified sup-norm bound on f - polynomial
    bool target_reached;      ///< error_bound <= e^{-N^3} was achievable
    double target;            ///< e^{-N^3} (clamped to 0 underflow-safe)
};

/// Truncates f to a trigonometric polynomial of band <= min(N^4, band_cap).
/// The error bound is the exact sum of dropped amplitudes, which is bounded by
/// the geometric tail sum_{|k|>band} e^{-|k|} under the normalization.
TruncationResult fourier_truncate(const AnalyticTorusFunction& f, int scale,
                                  int band_cap = 1 << 20);

}  // namespace qplocal
