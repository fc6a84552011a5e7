#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qplocal/frequency.hpp"
#include "qplocal/sublevel.hpp"
#include "qplocal/torus_function.hpp"
#include "qplocal/weight.hpp"

using namespace qplocal;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("evaluate: builtins at pinned points") {
    CHECK(AnalyticTorusFunction::constant(1.0).evaluate(0.37) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(AnalyticTorusFunction::cosine().evaluate(0.0) == doctest::Approx(1.0).epsilon(1e-14));
    // sin^2(2 pi 0.125) = sin^2(pi/4) = 1/2
    CHECK(AnalyticTorusFunction::sine_squared().evaluate(0.125) ==
          doctest::Approx(0.5).epsilon(1e-12));
    // cross-check the mode table against direct trig on a grid
    auto sin2 = AnalyticTorusFunction::sine_squared();
    for (int i = 0; i < 100; ++i) {
        double t = i / 100.0;
        double direct = std::sin(2.0 * kPi * t) * std::sin(2.0 * kPi * t);
        CHECK(sin2.evaluate(t) == doctest::Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("evaluate: 1-periodicity within the stated tolerance") {
    auto f = AnalyticTorusFunction::cosine().plus(AnalyticTorusFunction::sine_squared(), 0.7, 0.3);
    for (double t : {0.0, 0.1, 0.437, 0.99, 3.25}) {
        double bound = 1e-12 * (1.0 + f.max_amplitude() * f.band());
        CHECK(std::abs(f.evaluate(t) - f.evaluate(t + 1.0)) <= bound);
    }
}

TEST_CASE("evaluate: linearity of the mode representation") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    auto f = AnalyticTorusFunction::cosine();
    auto g = AnalyticTorusFunction::sine_squared();
    for (int trial = 0; trial < 20; ++trial) {
        double alpha = uni(rng), beta = uni(rng), t = uni(rng) + 1.0;
        auto combo = f.plus(g, alpha, beta);
        double expect = alpha * f.evaluate(t) + beta * g.evaluate(t);
        CHECK(combo.evaluate(t) ==
              doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("normalization policies") {
    AnalyticTorusFunction::ModeMap hot{{1, {0.6, 0.0}}, {-1, {0.6, 0.0}}};
    CHECK_THROWS_AS(AnalyticTorusFunction(hot, AnalyticTorusFunction::Normalization::Require),
                    std::invalid_argument);

    AnalyticTorusFunction rescaled(hot, AnalyticTorusFunction::Normalization::Rescale);
    CHECK(rescaled.rescaled());
    CHECK(rescaled.decay_constant() == doctest::Approx(1.0));

    // Builtins keep their exact trig amplitudes and record the constant.
    auto cos = AnalyticTorusFunction::cosine();
    CHECK(!cos.rescaled());
    CHECK(cos.decay_constant() == doctest::Approx(0.5 * std::exp(1.0)));

    AnalyticTorusFunction::ModeMap skew{{1, {0.2, 0.1}}, {-1, {0.2, 0.2}}};
    CHECK_THROWS_AS((AnalyticTorusFunction(skew)), std::invalid_argument);
}

TEST_CASE("fourier_truncate: exact below the band, geometric tail above") {
    // Band-3 function, scale 2: N^4 = 16 >= 3, so truncation is exact.
    AnalyticTorusFunction f({{0, {0.3, 0.0}}, {3, {0.04, 0.0}}, {-3, {0.04, 0.0}}});
    auto exact = fourier_truncate(f, 2);
    CHECK(exact.error_bound == 0.0);
    CHECK(exact.polynomial.modes() == f.modes());

    // |c_k| = e^{-|k|} up to 40, keep |k| <= 20: the dropped mass obeys the
    // geometric tail bound 2 e^{-21} / (1 - e^{-1}).
    AnalyticTorusFunction::ModeMap decay{{0, {1.0, 0.0}}};
    for (int k = 1; k <= 40; ++k) {
        decay[k] = {std::exp(-k), 0.0};
        decay[-k] = {std::exp(-k), 0.0};
    }
    AnalyticTorusFunction g(decay);
    auto cut = fourier_truncate(g, 40, 20);
    CHECK(cut.band == 20);
    double tail_bound = 2.0 * std::exp(-21.0) / (1.0 - std::exp(-1.0));
    CHECK(cut.error_bound <= tail_bound);
    CHECK(cut.error_bound >= 2.0 * std::exp(-21.0));

    // Certificate: sup over a 1e4 grid never exceeds the reported bound.
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        double t = i / 10000.0;
        worst = std::max(worst, std::abs(g.evaluate(t) - cut.polynomial.evaluate(t)));
    }
    CHECK(worst <= cut.error_bound * (1.0 + 1e-12) + 1e-15);

    // cos is already a polynomial: any scale reproduces it.
    auto cos_cut = fourier_truncate(AnalyticTorusFunction::cosine(), 2);
    CHECK(cos_cut.polynomial.modes() == AnalyticTorusFunction::cosine().modes());
    CHECK(cos_cut.error_bound == 0.0);
}

TEST_CASE("diophantine_margin: resonant, single-shell and calibration cases") {
    FrequencyVector rational{0.5, 0.5, 1e-3, 3.0};
    auto res = diophantine_margin(rational, 2);
    CHECK(res.margin == 0.0);
    CHECK(std::llabs(res.l1) == 1);
    CHECK(std::llabs(res.l2) == 1);
    CHECK(!res.certified);

    FrequencyVector omega = calibration_frequencies();
    auto shell = diophantine_margin(omega, 1);
    // |l|_1 = 1 is exactly the four unit vectors, so the margin is
    // min(||w1||, ||w2||) = 1 - golden mean.
    CHECK(shell.margin == doctest::Approx(std::min(torus_norm(omega.w1), torus_norm(omega.w2)))
                              .epsilon(1e-15));

    auto deep = diophantine_margin(omega, 100);
    CHECK(deep.margin > 0.0);
    CHECK(deep.certified);  // margin stays above the 1e-3 constant

    // Independent long-double rescan over the same shells.
    long double best = 1e30L;
    for (long long l1 = -100; l1 <= 100; ++l1) {
        for (long long l2 = -(100 - std::llabs(l1)); l2 <= 100 - std::llabs(l1); ++l2) {
            if (l1 == 0 && l2 == 0) continue;
            long double t = l1 * static_cast<long double>(omega.w1) +
                            l2 * static_cast<long double>(omega.w2);
            long double frac = t - std::floor(t);
            frac = std::min(frac, 1.0L - frac);
            long double norm1 = static_cast<long double>(std::llabs(l1) + std::llabs(l2));
            best = std::min(best, frac * norm1 * norm1 * norm1);
        }
    }
    CHECK(deep.margin == doctest::Approx(static_cast<double>(best)).epsilon(1e-9));
}

TEST_CASE("orbit: identity, rational period, compensated long walks") {
    FrequencyVector omega{0.25, 0.25, 1e-3, 3.0};
    Phase p(0.0, 0.0);
    Phase same = orbit(p, omega, 0);
    CHECK(same.x == 0.0);
    CHECK(same.y == 0.0);

    Phase back = orbit(p, omega, 4);
    CHECK(back.x == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(back.y == doctest::Approx(0.0).epsilon(1e-15));

    // Extended-precision oracle at n = 1e6.
    FrequencyVector golden = calibration_frequencies();
    Phase far = orbit(p, golden, 1000000);
    long double gx = 1000000.0L * static_cast<long double>(golden.w1);
    long double gy = 1000000.0L * static_cast<long double>(golden.w2);
    gx -= std::floor(gx);
    gy -= std::floor(gy);
    CHECK(std::abs(far.x - static_cast<double>(gx)) < 1e-6);
    CHECK(std::abs(far.y - static_cast<double>(gy)) < 1e-6);
}

TEST_CASE("orbit: additivity over composed walks") {
    FrequencyVector omega = calibration_frequencies();
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long long> steps(-1000000, 1000000);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int trial = 0; trial < 25; ++trial) {
        Phase p(uni(rng), uni(rng));
        long long m = steps(rng), n = steps(rng);
        Phase two = orbit(orbit(p, omega, m), omega, n);
        Phase one = orbit(p, omega, m + n);
        CHECK(torus_norm(two.x - one.x) < 1e-9);
        CHECK(torus_norm(two.y - one.y) < 1e-9);
    }
}

TEST_CASE("weight_zero_analysis: sin^2 and raised cosine") {
    auto wf = weight_zero_analysis(AnalyticTorusFunction::sine_squared());
    REQUIRE(wf.zeros.size() == 2);
    CHECK(std::min(torus_norm(wf.zeros[0].location), torus_norm(wf.zeros[1].location)) < 1e-6);
    bool has_half = torus_norm(wf.zeros[0].location - 0.5) < 1e-6 ||
                    torus_norm(wf.zeros[1].location - 0.5) < 1e-6;
    CHECK(has_half);
    CHECK(wf.zeros[0].order == 2);
    CHECK(wf.zeros[1].order == 2);
    CHECK(wf.max_order == 2);

    // Oracle: direct grid minimization of w / min(||y||, ||y-1/2||)^2.
    double oracle = 1e300;
    for (int i = 0; i < 20000; ++i) {
        double y = i / 20000.0;
        double d = std::min(torus_norm(y), torus_norm(y - 0.5));
        if (d < 1e-4) continue;
        double value = std::sin(2.0 * kPi * y) * std::sin(2.0 * kPi * y);
        oracle = std::min(oracle, value / (d * d));
    }
    CHECK(wf.lower_constant == doctest::Approx(oracle).epsilon(0.05));

    auto raised = weight_zero_analysis(
        AnalyticTorusFunction({{0, {1.0, 0.0}}, {1, {0.5, 0.0}}, {-1, {0.5, 0.0}}}));
    REQUIRE(raised.zeros.size() == 1);
    CHECK(torus_norm(raised.zeros[0].location - 0.5) < 1e-6);
    CHECK(raised.zeros[0].order == 2);
}

TEST_CASE("weight_zero_analysis: rejects invalid weights") {
    CHECK_THROWS_AS(weight_zero_analysis(AnalyticTorusFunction::constant(0.0)),
                    std::invalid_argument);
    CHECK_THROWS_AS(weight_zero_analysis(AnalyticTorusFunction::cosine()),
                    std::invalid_argument);
}

TEST_CASE("weight lower bound holds on a fine grid") {
    auto wf = weight_zero_analysis(AnalyticTorusFunction::sine_squared());
    for (int i = 0; i < 100000; ++i) {
        double y = i / 100000.0;
        CHECK(wf.lower_bound_slack(y) >= -1e-12);
    }
}

TEST_CASE("sublevel_measure: trivial, closed-form and saturated thresholds") {
    auto v_const = AnalyticTorusFunction::constant(1.0);
    auto w = AnalyticTorusFunction::sine_squared();
    auto empty = sublevel_measure(v_const, w, 0.0, 0.5, SamplerSpec::grid(256));
    CHECK(empty.value == 0.0);

    // mes{|cos(2 pi x)| < eps} = (2/pi) asin(eps)
    auto cosine = AnalyticTorusFunction::cosine();
    auto arc = sublevel_measure(cosine, w, 0.0, 1e-2, SamplerSpec::grid(4096));
    double closed_form = (2.0 / kPi) * std::asin(1e-2);
    CHECK(arc.value == doctest::Approx(closed_form).epsilon(1e-3));

    double saturate = 2.0 + 0.0 * 1.0;
    auto full = sublevel_measure(cosine, w, 0.0, saturate, SamplerSpec::grid(256));
    CHECK(full.value == 1.0);

    // Seeded Monte Carlo agrees within a few standard errors.
    auto mc = sublevel_measure(cosine, w, 0.0, 1e-2, SamplerSpec::monte_carlo(4000000, 42));
    CHECK(std::abs(mc.value - closed_form) < 5.0 * std::max(mc.std_error, 1e-6));
}
