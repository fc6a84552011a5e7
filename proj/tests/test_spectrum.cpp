#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qplocal/spectrum.hpp"
#include "qplocal/tridiag_eigen.hpp"
#include "qplocal/weight.hpp"

using namespace qplocal;

namespace {

constexpr double kPi = std::numbers::pi;

ModelParameters calibration_model(double coupling, double energy, const Phase& phase) {
    ModelParameters p;
    p.coupling = coupling;
    p.energy = energy;
    p.v = AnalyticTorusFunction::cosine();
    p.w = weight_zero_analysis(AnalyticTorusFunction::sine_squared());
    p.omega = calibration_frequencies();
    p.phase = phase;
    return p;
}

WeightFunction unit_weight() {
    return WeightFunction{AnalyticTorusFunction::constant(1.0), {}, 0, 1.0};
}

ModelParameters random_positive_weight_model(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    ModelParameters p;
    p.coupling = 1.0 + 30.0 * uni(rng);
    p.energy = 0.0;
    AnalyticTorusFunction::ModeMap vmodes{{0, {uni(rng) - 0.5, 0.0}}};
    for (int k = 1; k <= 3; ++k) {
        double amp = 0.8 * std::exp(-k) * (uni(rng) - 0.5);
        vmodes[k] = {amp, 0.3 * amp};
        vmodes[-k] = std::conj(std::complex<double>(amp, 0.3 * amp));
    }
    p.v = AnalyticTorusFunction(vmodes);
    // Strictly positive weight: 1 + small oscillation.
    double a1 = 0.3 * uni(rng), a2 = 0.2 * uni(rng);
    AnalyticTorusFunction wbase({{0, {1.0, 0.0}},
                                 {1, {a1 / 2, 0.0}},
                                 {-1, {a1 / 2, 0.0}},
                                 {2, {a2 / 2, 0.0}},
                                 {-2, {a2 / 2, 0.0}}});
    p.w = WeightFunction{wbase, {}, 0, 1.0 - a1 - a2};
    p.omega = FrequencyVector{0.3 + 0.4 * uni(rng), 0.3 + 0.4 * uni(rng), 1e-3, 3.0};
    p.phase = Phase(uni(rng), uni(rng));
    return p;
}

}  // namespace

TEST_CASE("eigensolve_jacobi: free Laplacian closed form") {
    ModelParameters p;
    p.coupling = 0.0;
    p.energy = 0.0;
    p.v = AnalyticTorusFunction::cosine();
    p.w = unit_weight();
    p.omega = calibration_frequencies();

    const int n = 12;
    EigenReport report = eigensolve_jacobi(p, LatticeInterval(1, n), 0.5);
    REQUIRE(report.eigenvalues.size() == n);
    // Hopping -1 Dirichlet spectrum: -2 cos(pi k / (n+1)), ascending.
    for (int k = 1; k <= n; ++k) {
        double expect = -2.0 * std::cos(kPi * k / (n + 1.0));
        CHECK(report.eigenvalues[k - 1] == doctest::Approx(expect).epsilon(1e-10));
    }
    CHECK(report.max_residual < 1e-8);
    CHECK(report.orthonormality_error < 1e-8);
}

TEST_CASE("eigensolve_jacobi: single site and localized calibration family") {
    ModelParameters p = calibration_model(7.0, 0.0, Phase(0.1, 0.31));
    EigenReport single = eigensolve_jacobi(p, LatticeInterval(0, 0), 1e-8);
    REQUIRE(single.eigenvalues.size() == 1);
    double expect = p.potential_at(0) / p.weight_at(0);
    CHECK(single.eigenvalues[0] == doctest::Approx(expect).epsilon(1e-12));
    CHECK(single.ipr_values[0] == doctest::Approx(1.0));

    // Strong coupling: size 401, every IPR above 0.2.
    ModelParameters strong = calibration_model(1e4, 0.0, Phase(0.37, 0.71));
    EigenReport loc = eigensolve_jacobi(strong, LatticeInterval::radius(200), 1e-8);
    REQUIRE(loc.eigenvalues.size() == 401);
    CHECK(loc.max_residual < 1e-8 * 1.0);  // residuals are per unit vector
    CHECK(loc.orthonormality_error < 1e-8);
    double min_ipr = 1.0;
    for (double v : loc.ipr_values) min_ipr = std::min(min_ipr, v);
    CHECK(min_ipr > 0.2);
}

TEST_CASE("pencil_eigensolve: identity weight and 2x2 quadratic oracle") {
    TridiagonalMatrix h0({1.5, -0.5, 2.0}, {-1.0, -1.0});
    std::vector<double> ones{1.0, 1.0, 1.0};
    PencilEigensystem pencil = pencil_eigensolve(h0, ones);
    std::vector<double> direct = tridiagonal_eigenvalues(h0);
    for (std::size_t i = 0; i < direct.size(); ++i)
        CHECK(pencil.eigenvalues[i] == doctest::Approx(direct[i]).epsilon(1e-10));

    // 2x2: w0 w1 E^2 - (a w1 + b w0) E + (a b - c^2) = 0
    double a = 2.0, b = -1.0, c = -1.0, w0 = 4.0, w1 = 0.25;
    TridiagonalMatrix two({a, b}, {c});
    PencilEigensystem p2 = pencil_eigensolve(two, {w0, w1});
    double qa = w0 * w1, qb = -(a * w1 + b * w0), qc = a * b - c * c;
    double disc = std::sqrt(qb * qb - 4 * qa * qc);
    double lo = (-qb - disc) / (2 * qa), hi = (-qb + disc) / (2 * qa);
    CHECK(p2.eigenvalues[0] == doctest::Approx(std::min(lo, hi)).epsilon(1e-12));
    CHECK(p2.eigenvalues[1] == doctest::Approx(std::max(lo, hi)).epsilon(1e-12));

    CHECK_THROWS_AS(pencil_eigensolve(two, {1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("dual-route spectral equivalence on seeded instances") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 50; ++trial) {
        ModelParameters p = random_positive_weight_model(rng);
        int radius = 3 + static_cast<int>(20.0 * std::generate_canonical<double, 53>(rng));
        LatticeInterval window = LatticeInterval::radius(radius);

        EigenReport jacobi = eigensolve_jacobi(p, window, 1e-6);
        TridiagonalMatrix h0 = assemble_H(p.with_energy(0.0), window);
        PencilEigensystem pencil = pencil_eigensolve(h0, weight_samples(p, window));

        double scale = std::max(std::abs(jacobi.eigenvalues.front()),
                                std::abs(jacobi.eigenvalues.back()));
        scale = std::max(scale, 1.0);
        for (std::size_t i = 0; i < jacobi.eigenvalues.size(); ++i)
            CHECK(std::abs(jacobi.eigenvalues[i] - pencil.eigenvalues[i]) <= 1e-8 * scale);

        // Vectors correspond through psi' = W^{1/2} psi, up to sign.
        const std::size_t n = window.size();
        std::vector<double> w = weight_samples(p, window);
        for (std::size_t j = 0; j < n; j += std::max<std::size_t>(1, n / 3)) {
            std::vector<double> mapped(n);
            double norm2 = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                mapped[i] = std::sqrt(w[i]) * pencil.eigenvectors[j][i];
                norm2 += mapped[i] * mapped[i];
            }
            double dot = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                dot += mapped[i] * jacobi.eigenvectors[j][i];
            CHECK(std::abs(std::abs(dot) / std::sqrt(norm2) - 1.0) < 1e-6);
        }
    }
}

TEST_CASE("ipr: delta, uniform and exponential profiles") {
    std::vector<double> delta(11, 0.0);
    delta[4] = 1.0;
    CHECK(ipr(delta) == doctest::Approx(1.0));

    std::vector<double> uniform(25, 1.0 / 5.0);
    CHECK(ipr(uniform) == doctest::Approx(1.0 / 25.0).epsilon(1e-12));

    // psi_n ~ e^{-|n|/2}: IPR -> tanh^2(1/2)/tanh(1).
    const int half = 30;
    std::vector<double> expo(2 * half + 1);
    double norm2 = 0.0;
    for (int n = -half; n <= half; ++n) {
        expo[n + half] = std::exp(-std::abs(n) / 2.0);
        norm2 += expo[n + half] * expo[n + half];
    }
    for (double& x : expo) x /= std::sqrt(norm2);
    double closed_form = std::tanh(0.5) * std::tanh(0.5) / std::tanh(1.0);
    CHECK(ipr(expo) == doctest::Approx(closed_form).epsilon(1e-6));

    std::vector<double> unnormalized(5, 1.0);
    CHECK_THROWS_AS(ipr(unnormalized), std::invalid_argument);
}

TEST_CASE("poisson_reconstruct: zero boundary, scalar formula, restriction identity") {
    ModelParameters p = calibration_model(5.0, 1.0, Phase(0.05, 0.41));
    GreensMatrix g = greens(p, LatticeInterval(-3, 3));
    std::vector<double> zero = poisson_reconstruct(0.0, 0.0, g);
    for (double v : zero) CHECK(v == 0.0);

    // Size-1 window: psi_0 = (psi_{-1} + psi_1)/(lambda v_0 - E w_0).
    GreensMatrix g1 = greens(p, LatticeInterval(0, 0));
    double denom = p.potential_at(0) - p.energy * p.weight_at(0);
    std::vector<double> scalar = poisson_reconstruct(0.3, -0.8, g1);
    CHECK(scalar[0] == doctest::Approx((0.3 - 0.8) / denom).epsilon(1e-12));

    // Solve a size-201 pencil problem at moderate coupling, restrict an
    // eigenvector to an interior window avoiding its center, reconstruct.
    ModelParameters family = calibration_model(5.0, 0.0, Phase(0.13, 0.57));
    LatticeInterval big = LatticeInterval::radius(100);
    TridiagonalMatrix h0 = assemble_H(family.with_energy(0.0), big);
    PencilEigensystem pencil = pencil_eigensolve(h0, weight_samples(family, big));

    int reconstructed = 0;
    for (std::size_t j = 40; j < pencil.eigenvalues.size() && reconstructed < 5; j += 7) {
        const auto& psi = pencil.eigenvectors[j];
        std::size_t center = 0;
        for (std::size_t i = 1; i < psi.size(); ++i)
            if (std::abs(psi[i]) > std::abs(psi[center])) center = i;
        long long c = big.site(center);
        LatticeInterval window = c <= 0 ? LatticeInterval(c + 12, c + 62)
                                        : LatticeInterval(c - 62, c - 12);
        if (!big.contains(window.a - 1) || !big.contains(window.b + 1)) continue;

        GreensMatrix gw;
        try {
            gw = greens(family.with_energy(pencil.eigenvalues[j]), window);
        } catch (const SingularRestrictionError&) {
            continue;  // E too close to the window spectrum
        }
        double left = psi[static_cast<std::size_t>(window.a - 1 - big.a)];
        double right = psi[static_cast<std::size_t>(window.b + 1 - big.a)];
        std::vector<double> rec = poisson_reconstruct(left, right, gw);
        double err2 = 0.0;
        for (std::size_t i = 0; i < rec.size(); ++i) {
            double diff = rec[i] - psi[static_cast<std::size_t>(window.a + i - big.a)];
            err2 += diff * diff;
        }
        CHECK(std::sqrt(err2) < 1e-8);  // psi is unit-normalized
        ++reconstructed;
    }
    CHECK(reconstructed >= 3);
}

TEST_CASE("decay_rate_of_eigenvector: exact exponential and delocalized flag") {
    const int half = 40;
    std::vector<double> expo(2 * half + 1);
    for (int n = -half; n <= half; ++n) expo[n + half] = std::exp(-std::abs(n));
    DecayFit fit = decay_rate_of_eigenvector(expo, half);
    CHECK(fit.rate == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(fit.residual < 1e-9);
    CHECK(fit.reliable);

    // Free Laplacian eigenvectors are extended; the fit must flag itself.
    ModelParameters p;
    p.coupling = 0.0;
    p.energy = 0.0;
    p.v = AnalyticTorusFunction::cosine();
    p.w = unit_weight();
    p.omega = calibration_frequencies();
    EigenReport report = eigensolve_jacobi(p, LatticeInterval::radius(40), 0.5);
    const auto& fits = report.decay_fits;
    REQUIRE(!fits.empty());
    std::size_t unreliable = 0;
    for (std::size_t j = 0; j < fits.size(); ++j)
        if (!report.fit_ok[j] || !fits[j].reliable) ++unreliable;
    CHECK(unreliable > fits.size() / 2);
}

TEST_CASE("lyapunov: free rotation, constant coefficients, and input checks") {
    ModelParameters free;
    free.coupling = 0.0;
    free.energy = 0.0;
    free.v = AnalyticTorusFunction::cosine();
    free.w = unit_weight();
    free.omega = calibration_frequencies();
    LyapunovEstimate zero = lyapunov(free, 0.0, 20000);
    CHECK(std::abs(zero.gamma) < 1e-12);
    CHECK(zero.renormalizations == 20000 / 16);

    // lambda v = c constant: gamma = log((|c-E| + sqrt((c-E)^2 - 4))/2).
    ModelParameters constant;
    constant.coupling = 5.0;
    constant.energy = 0.0;
    constant.v = AnalyticTorusFunction::constant(1.0);
    constant.w = unit_weight();
    constant.omega = calibration_frequencies();
    for (double e : {0.0, 1.5, -2.2}) {
        double gap = std::abs(5.0 - e);
        double expect = std::log((gap + std::sqrt(gap * gap - 4.0)) / 2.0);
        LyapunovEstimate est = lyapunov(constant, e, 100000);
        CHECK(est.gamma == doctest::Approx(expect).epsilon(1e-4));
    }

    CHECK_THROWS_AS(lyapunov(free, 0.0, 10), std::invalid_argument);
}

TEST_CASE("lyapunov agrees with eigenvector decay on the calibration family") {
    ModelParameters p = calibration_model(1e4, 0.0, Phase(0.37, 0.71));
    EigenReport report = eigensolve_jacobi(p, LatticeInterval::radius(150), 1e-8);

    // Median fitted rate among localized vectors with a usable fit.
    std::vector<std::pair<double, double>> rate_energy;
    for (std::size_t j = 0; j < report.eigenvalues.size(); ++j)
        if (report.fit_ok[j] && report.ipr_values[j] > 0.1)
            rate_energy.push_back({report.decay_fits[j].rate, report.eigenvalues[j]});
    REQUIRE(rate_energy.size() > 100);
    std::sort(rate_energy.begin(), rate_energy.end());
    auto [median_rate, median_energy] = rate_energy[rate_energy.size() / 2];

    LyapunovEstimate gamma = lyapunov(p, median_energy, 200000);
    CHECK(std::abs(median_rate - gamma.gamma) / gamma.gamma < 0.10);
}

TEST_CASE("distance_to_spectrum: pinned cases and the resolvent identity") {
    ModelParameters p = calibration_model(6.0, 0.0, Phase(0.21, 0.43));
    LatticeInterval window = LatticeInterval::radius(8);

    EigenReport report = eigensolve_jacobi(p, window, 1e-6);
    double hit = report.eigenvalues[report.eigenvalues.size() / 2];
    SpectrumDistance at_eigen = distance_to_spectrum(hit, p, window, 1e-6);
    CHECK(at_eigen.eigenvalue_route <
          1e-8 * std::max(1.0, std::abs(report.eigenvalues.back())));

    ModelParameters single = calibration_model(3.0, 0.0, Phase(0.12, 0.39));
    SpectrumDistance scalar = distance_to_spectrum(2.5, single, LatticeInterval(0, 0), 1e-6);
    double c = single.potential_at(0) / single.weight_at(0);
    CHECK(scalar.eigenvalue_route == doctest::Approx(std::abs(2.5 - c)).epsilon(1e-12));

    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        ModelParameters q = random_positive_weight_model(rng);
        LatticeInterval win = LatticeInterval::radius(4 + static_cast<int>(uni(rng) * 20));
        std::vector<double> eigs =
            tridiagonal_eigenvalues(assemble_jacobi(q, win, 1e-6));
        double lo = eigs.front(), hi = eigs.back();
        double probe = lo + (hi - lo) * uni(rng) + 0.1 * uni(rng);
        SpectrumDistance d = distance_to_spectrum(probe, q, win, 1e-6);
        if (d.eigenvalue_route == 0.0) continue;
        CHECK(d.relative_gap < 1e-8);
    }
}
