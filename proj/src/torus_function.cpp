#include "qplocal/torus_function.hpp"

#include <cmath>
#include <numbers>

namespace qplocal {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kSymmetryTol = 1e-12;
}  // namespace

AnalyticTorusFunction::AnalyticTorusFunction(const ModeMap& modes, Normalization policy) {
    // Complete the table under hermitian symmetry and validate mirrors.
    for (const auto& [k, c] : modes) {
        auto mirror = modes.find(-k);
        if (mirror != modes.end()) {
            std::complex<double> expect = std::conj(mirror->second);
            if (std::abs(c - expect) > kSymmetryTol * (1.0 + std::abs(c)))
                throw std::invalid_argument(
                    "AnalyticTorusFunction: modes +" + std::to_string(k) + "/-" +
                    std::to_string(k) + " are not hermitian conjugates");
        }
        modes_[k] = c;
        modes_[-k] = mirror != modes.end() ? mirror->second : std::conj(c);
    }
    if (modes_.count(0) && std::abs(modes_.at(0).imag()) > kSymmetryTol)
        throw std::invalid_argument("AnalyticTorusFunction: mode 0 must be real");

    double worst = 0.0;
    for (const auto& [k, c] : modes_) {
        double amp = std::abs(c);
        band_ = std::max(band_, std::abs(k));
        max_amplitude_ = std::max(max_amplitude_, amp);
        worst = std::max(worst, amp * std::exp(std::abs(k)));
    }
    decay_constant_ = worst;

    if (worst > 1.0) {
        switch (policy) {
            case Normalization::Require:
                throw std::invalid_argument(
                    "AnalyticTorusFunction: mode table violates |c_k| <= e^{-|k|} "
                    "(decay constant " + std::to_string(worst) + ")");
            case Normalization::Rescale: {
                rescale_factor_ = 1.0 / worst;
                for (auto& [k, c] : modes_) c *= rescale_factor_;
                max_amplitude_ *= rescale_factor_;
                decay_constant_ = 1.0;
                break;
            }
            case Normalization::Accept:
                break;
        }
    }
}

AnalyticTorusFunction AnalyticTorusFunction::constant(double value) {
    return AnalyticTorusFunction({{0, {value, 0.0}}});
}

AnalyticTorusFunction AnalyticTorusFunction::cosine() {
    return AnalyticTorusFunction({{1, {0.5, 0.0}}, {-1, {0.5, 0.0}}});
}

AnalyticTorusFunction AnalyticTorusFunction::sine_squared() {
    // sin^2(2 pi t) = 1/2 - cos(4 pi t)/2
    return AnalyticTorusFunction({{0, {0.5, 0.0}}, {2, {-0.25, 0.0}}, {-2, {-0.25, 0.0}}});
}

std::optional<AnalyticTorusFunction> AnalyticTorusFunction::builtin(const std::string& name) {
    if (name == "cos") return cosine();
    if (name == "sin2") return sine_squared();
    if (name == "const") return constant(1.0);
    return std::nullopt;
}

double AnalyticTorusFunction::evaluate(double t) const {
    // Pair +k with -k so the imaginary parts cancel exactly:
    // c_k e^{2pi i k t} + conj(c_k) e^{-2pi i k t} = 2 Re(c_k) cos - 2 Im(c_k) sin.
    double acc = 0.0;
    auto zero = modes_.find(0);
    if (zero != modes_.end()) acc = zero->second.real();
    for (const auto& [k, c] : modes_) {
        if (k <= 0) continue;
        double angle = kTwoPi * k * t;
        acc += 2.0 * (c.real() * std::cos(angle) - c.imag() * std::sin(angle));
    }
    return acc;
}

double AnalyticTorusFunction::sup_bound() const {
    double s = 0.0;
    for (const auto& [k, c] : modes_) s += std::abs(c);
    return s;
}

AnalyticTorusFunction AnalyticTorusFunction::scaled(double factor) const {
    ModeMap out = modes_;
    for (auto& [k, c] : out) c *= factor;
    return AnalyticTorusFunction(out);
}

AnalyticTorusFunction AnalyticTorusFunction::plus(const AnalyticTorusFunction& other,
                                                  double own, double theirs) const {
    ModeMap out;
    for (const auto& [k, c] : modes_) out[k] += own * c;
    for (const auto& [k, c] : other.modes_) out[k] += theirs * c;
    return AnalyticTorusFunction(out);
}

TruncationResult fourier_truncate(const AnalyticTorusFunction& f, int scale, int band_cap) {
    if (scale < 2) throw std::invalid_argument("fourier_truncate: scale must be >= 2");

    // Degree budget N^4, saturating instead of overflowing.
    long long n4 = 1;
    for (int i = 0; i < 4; ++i) {
        n4 *= scale;
        if (n4 > band_cap) { n4 = band_cap; break; }
    }
    const int band = static_cast<int>(std::min<long long>(n4, band_cap));

    AnalyticTorusFunction::ModeMap kept;
    double dropped = 0.0;
    for (const auto& [k, c] : f.modes()) {
        if (std::abs(k) <= band)
            kept[k] = c;
        else
            dropped += std::abs(c);
    }

    TruncationResult out;
    out.polynomial = AnalyticTorusFunction(kept);
    out.band = band;
    out.error_bound = dropped;
    out.target = std::exp(-std::pow(static_cast<double>(scale), 3.0));
    out.target_reached = dropped <= out.target;
    return out;
}

}  // namespace qplocal
