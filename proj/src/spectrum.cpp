#include "qplocal/spectrum.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qplocal/tridiag_eigen.hpp"

namespace qplocal {

double ipr(const std::vector<double>& psi) {
    double norm2 = 0.0;
    for (double x : psi) norm2 += x * x;
    if (std::abs(std::sqrt(norm2) - 1.0) > 1e-10)
        throw std::invalid_argument("ipr: vector is not l2-normalized");
    double acc = 0.0;
    for (double x : psi) acc += x * x * x * x;
    return acc;
}

namespace {

void fix_sign(std::vector<double>& psi) {
    for (double x : psi) {
        if (std::abs(x) > 1e-300) {
            if (x < 0)
                for (double& v : psi) v = -v;
            return;
        }
    }
}

void attach_diagnostics(EigenReport& report) {
    const std::size_t count = report.eigenvectors.size();
    report.ipr_values.resize(count);
    report.centers.resize(count);
    report.decay_fits.resize(count);
    report.fit_ok.resize(count);
    for (std::size_t j = 0; j < count; ++j) {
        const auto& psi = report.eigenvectors[j];
        std::size_t argmax = 0;
        for (std::size_t i = 1; i < psi.size(); ++i)
            if (std::abs(psi[i]) > std::abs(psi[argmax])) argmax = i;
        report.centers[j] = report.interval.site(argmax);
        report.ipr_values[j] = ipr(psi);
        try {
            report.decay_fits[j] = decay_rate_of_eigenvector(psi, argmax);
            report.fit_ok[j] = true;
        } catch (const std::invalid_argument&) {
            report.fit_ok[j] = false;
        }
    }
    report.max_residual = 0.0;
    for (double r : report.residuals) report.max_residual = std::max(report.max_residual, r);
}

}  // namespace

EigenReport eigensolve_jacobi(const ModelParameters& p, const LatticeInterval& interval,
                              double floor) {
    EigenReport report;
    report.interval = interval;

    try {
        TridiagonalMatrix h1 = assemble_jacobi(p, interval, floor);
        TridiagonalEigensystem sys = tridiagonal_eigensystem(h1);
        report.eigenvalues = std::move(sys.eigenvalues);
        report.eigenvectors = std::move(sys.eigenvectors);
        report.residuals = std::move(sys.residuals);
        report.orthonormality_error = sys.orthonormality_error;
        for (auto& psi : report.eigenvectors) fix_sign(psi);
    } catch (const WeightFloorError&) {
        // Degenerate weights: clamp and go through the generalized route.
        constexpr double kFallbackFloor = 1e-8;
        report.pencil_fallback = true;

        std::vector<double> w = weight_samples(p, interval);
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (w[i] < floor) report.floored_sites.push_back(interval.site(i));
            w[i] = std::max(w[i], kFallbackFloor);
        }
        ModelParameters h0_params = p;
        h0_params.energy = 0.0;
        TridiagonalMatrix h0 = assemble_H(h0_params, interval);
        PencilEigensystem pencil = pencil_eigensolve(h0, w);

        const std::size_t n = interval.size();
        report.eigenvalues = pencil.eigenvalues;
        report.eigenvectors.resize(n);
        report.residuals.assign(n, 0.0);
        TridiagonalMatrix h1(n);
        for (std::size_t i = 0; i < n; ++i) {
            h1.diagonal[i] = h0.diagonal[i] / w[i];
            if (i + 1 < n) h1.off_diagonal[i] = -1.0 / std::sqrt(w[i] * w[i + 1]);
        }
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<double> psi(n);
            double norm2 = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                psi[i] = std::sqrt(w[i]) * pencil.eigenvectors[j][i];
                norm2 += psi[i] * psi[i];
            }
            double norm = std::sqrt(norm2);
            for (double& x : psi) x /= norm;
            fix_sign(psi);
            std::vector<double> hpsi;
            h1.apply(psi, hpsi);
            double res = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                double r = hpsi[i] - report.eigenvalues[j] * psi[i];
                res += r * r;
            }
            report.residuals[j] = std::sqrt(res);
            report.eigenvectors[j] = std::move(psi);
        }
        double worst = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = j; k < std::min(j + 4, n); ++k) {
                double dot = 0.0;
                for (std::size_t i = 0; i < n; ++i)
                    dot += report.eigenvectors[j][i] * report.eigenvectors[k][i];
                worst = std::max(worst, std::abs(dot - (j == k ? 1.0 : 0.0)));
            }
        }
        report.orthonormality_error = worst;
    }

    attach_diagnostics(report);
    return report;
}

PencilEigensystem pencil_eigensolve(const TridiagonalMatrix& h0,
                                    const std::vector<double>& weights) {
    const std::size_t n = h0.size();
    if (weights.size() != n)
        throw std::invalid_argument("pencil_eigensolve: weight vector size mismatch");
    for (std::size_t i = 0; i < n; ++i)
        if (!(weights[i] > 0.0))
            throw std::invalid_argument("pencil_eigensolve: non-positive weight at offset " +
                                        std::to_string(i));

    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                              static_cast<Eigen::Index>(n));
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                              static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = h0.diagonal[i];
        w(i, i) = weights[i];
        if (i + 1 < n) {
            a(i, i + 1) = h0.off_diagonal[i];
            a(i + 1, i) = h0.off_diagonal[i];
        }
    }

    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, w);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("pencil_eigensolve: dense solver failed");

    PencilEigensystem out;
    out.eigenvalues.resize(n);
    out.eigenvectors.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        out.eigenvalues[j] = solver.eigenvalues()(static_cast<Eigen::Index>(j));
        std::vector<double> psi(n);
        double norm2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            psi[i] = solver.eigenvectors()(static_cast<Eigen::Index>(i),
                                           static_cast<Eigen::Index>(j));
            norm2 += psi[i] * psi[i];
        }
        double norm = std::sqrt(norm2);
        for (double& x : psi) x /= norm;
        fix_sign(psi);
        out.eigenvectors[j] = std::move(psi);
    }
    return out;
}

std::vector<double> poisson_reconstruct(double psi_left, double psi_right,
                                        const GreensMatrix& g) {
    const std::size_t n = g.size();
    std::vector<double> interior(n);
    for (std::size_t i = 0; i < n; ++i)
        interior[i] = psi_left * g.entries[i][0] + psi_right * g.entries[i][n - 1];
    return interior;
}

DecayFit decay_rate_of_eigenvector(const std::vector<double>& psi, std::size_t center_index,
                                   double core_radius) {
    std::vector<double> dist, mag;
    for (std::size_t i = 0; i < psi.size(); ++i) {
        double d = std::abs(static_cast<double>(i) - static_cast<double>(center_index));
        if (d <= core_radius) continue;
        dist.push_back(d);
        mag.push_back(std::abs(psi[i]));
    }
    DecayFit fit = fit_exponential_profile(dist, mag);
    fit.cutoff = core_radius;
    return fit;
}

LyapunovEstimate lyapunov(const ModelParameters& p, double energy, long long steps) {
    if (steps < 1000) throw std::invalid_argument("lyapunov: need at least 1000 steps");

    LyapunovEstimate out;
    out.energy = energy;
    out.steps = steps;
    out.phase = p.phase;

    // Column frame of the 2x2 cocycle, Gram-Schmidt renormalized.
    double a11 = 1.0, a12 = 0.0, a21 = 0.0, a22 = 1.0;
    double log_sum = 0.0;
    constexpr int kRenormEvery = 16;

    int since_renorm = 0;
    for (long long n = 0; n < steps; ++n) {
        double d = p.potential_at(n) - energy * p.weight_at(n);
        double b11 = d * a11 - a21;
        double b12 = d * a12 - a22;
        a21 = a11;
        a22 = a12;
        a11 = b11;
        a12 = b12;
        if (++since_renorm == kRenormEvery || n + 1 == steps) {
            double r11 = std::hypot(a11, a21);
            if (!(r11 > 0.0) || !std::isfinite(r11))
                throw std::runtime_error("lyapunov: transfer product overflowed");
            double q1 = a11 / r11, q2 = a21 / r11;
            double r12 = q1 * a12 + q2 * a22;
            double c2x = a12 - r12 * q1, c2y = a22 - r12 * q2;
            double r22 = std::hypot(c2x, c2y);
            a11 = q1;
            a21 = q2;
            if (r22 > 0.0) {
                a12 = c2x / r22;
                a22 = c2y / r22;
            } else {
                a12 = -q2;
                a22 = q1;
            }
            log_sum += std::log(r11);
            ++out.renormalizations;
            since_renorm = 0;
        }
    }
    out.gamma = log_sum / static_cast<double>(steps);
    return out;
}

SpectrumDistance distance_to_spectrum(double energy, const ModelParameters& p,
                                      const LatticeInterval& interval, double floor) {
    TridiagonalMatrix h1 = assemble_jacobi(p, interval, floor);

    SpectrumDistance out;
    double best = std::numeric_limits<double>::infinity();
    for (double e : tridiagonal_eigenvalues(h1)) best = std::min(best, std::abs(energy - e));
    out.eigenvalue_route = best;

    double res = resolvent_norm(h1, energy);
    out.resolvent_route = std::isinf(res) ? 0.0 : 1.0 / res;

    double denom = std::max(out.eigenvalue_route, out.resolvent_route);
    out.relative_gap =
        denom > 0.0 ? std::abs(out.eigenvalue_route - out.resolvent_route) / denom : 0.0;
    return out;
}

}  // namespace qplocal
