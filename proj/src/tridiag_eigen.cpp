#include "qplocal/tridiag_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qplocal/tridiag_solve.hpp"

namespace qplocal {

namespace {

// Implicit QL sweeps with Wilkinson shifts on (d, e); d becomes the
// eigenvalues.  e[n-1] is workspace and must be zero on entry.
void ql_iterate(std::vector<double>& d, std::vector<double>& e) {
    const std::size_t n = d.size();
    constexpr double eps = std::numeric_limits<double>::epsilon();

    for (std::size_t l = 0; l < n; ++l) {
        int iterations = 0;
        while (true) {
            std::size_t m = l;
            while (m + 1 < n) {
                double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
                ++m;
            }
            if (m == l) break;
            if (++iterations > 64)
                throw std::runtime_error("tridiagonal_eigenvalues: QL failed to converge");

            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0, p = 0.0;
            bool underflow = false;
            for (std::size_t idx = m; idx-- > l;) {
                double f = s * e[idx];
                double b = c * e[idx];
                r = std::hypot(f, g);
                e[idx + 1] = r;
                if (r == 0.0) {
                    d[idx + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[idx + 1] - p;
                r = (d[idx] - g) * s + 2.0 * c * b;
                p = s * r;
                d[idx + 1] = g + p;
                g = c * r - b;
            }
            if (underflow) continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
}

}  // namespace

std::vector<double> tridiagonal_eigenvalues(const TridiagonalMatrix& h) {
    std::vector<double> d = h.diagonal;
    std::vector<double> e(h.size(), 0.0);
    std::copy(h.off_diagonal.begin(), h.off_diagonal.end(), e.begin());
    ql_iterate(d, e);
    std::sort(d.begin(), d.end());
    return d;
}

namespace {

using Extended = long double;

Extended norm2(const std::vector<Extended>& v) {
    Extended acc = 0;
    for (Extended x : v) acc += x * x;
    return std::sqrt(acc);
}

// One inverse-iteration pass at the given shift; b is overwritten with the
// normalized iterate.  Deterministic start from a small LCG.
void inverse_iterate(const TridiagonalMatrix& h, Extended shift, std::vector<Extended>& b,
                     int passes) {
    const std::size_t n = h.size();
    TridiagonalLU<Extended> lu(h.diagonal, h.off_diagonal, shift);
    if (lu.exact_singular()) {
        // Nudge off the exactly singular shift by a few ulps of the scale.
        Extended scale = h.inf_norm();
        lu = TridiagonalLU<Extended>(h.diagonal, h.off_diagonal,
                                     shift + scale * Extended(1e-18));
    }
    for (int pass = 0; pass < passes; ++pass) {
        lu.solve_in_place(b);
        Extended nb = norm2(b);
        if (!(nb > 0) || !std::isfinite(static_cast<double>(nb))) {
            // Re-seed; iterate diverged through underflow.
            std::uint64_t state = 0x9e3779b97f4a7c15ull + static_cast<std::uint64_t>(pass);
            for (std::size_t i = 0; i < n; ++i) {
                state = state * 6364136223846793005ull + 1442695040888963407ull;
                b[i] = Extended(static_cast<double>(state >> 11) / 9007199254740992.0 - 0.5);
            }
            nb = norm2(b);
        }
        for (Extended& x : b) x /= nb;
    }
}

Extended rayleigh_quotient(const TridiagonalMatrix& h, const std::vector<Extended>& v) {
    const std::size_t n = h.size();
    Extended acc = 0;
    for (std::size_t i = 0; i < n; ++i) {
        Extended hv = Extended(h.diagonal[i]) * v[i];
        if (i > 0) hv += Extended(h.off_diagonal[i - 1]) * v[i - 1];
        if (i + 1 < n) hv += Extended(h.off_diagonal[i]) * v[i + 1];
        acc += v[i] * hv;
    }
    return acc;
}

Extended residual_norm(const TridiagonalMatrix& h, const std::vector<Extended>& v,
                       Extended lambda) {
    const std::size_t n = h.size();
    Extended acc = 0;
    for (std::size_t i = 0; i < n; ++i) {
        Extended hv = Extended(h.diagonal[i]) * v[i];
        if (i > 0) hv += Extended(h.off_diagonal[i - 1]) * v[i - 1];
        if (i + 1 < n) hv += Extended(h.off_diagonal[i]) * v[i + 1];
        Extended r = hv - lambda * v[i];
        acc += r * r;
    }
    return std::sqrt(acc);
}

}  // namespace

TridiagonalEigensystem tridiagonal_eigensystem(const TridiagonalMatrix& h) {
    const std::size_t n = h.size();
    TridiagonalEigensystem out;
    out.eigenvalues = tridiagonal_eigenvalues(h);
    out.eigenvectors.assign(n, {});
    out.residuals.assign(n, 0.0);

    const double scale = std::max(h.inf_norm(), 1.0);
    const double cluster_tol = 1e-10 * scale;

    std::vector<std::vector<Extended>> cluster;  // extended copies for re-orthogonalization

    for (std::size_t j = 0; j < n; ++j) {
        if (j > 0 && out.eigenvalues[j] - out.eigenvalues[j - 1] > cluster_tol) cluster.clear();

        std::vector<Extended> v(n);
        std::uint64_t state = 0x2545f4914f6cdd1dull ^ (static_cast<std::uint64_t>(j) << 17);
        for (std::size_t i = 0; i < n; ++i) {
            state = state * 6364136223846793005ull + 1442695040888963407ull;
            v[i] = Extended(static_cast<double>(state >> 11) / 9007199254740992.0 - 0.5);
        }
        Extended nv = norm2(v);
        for (Extended& x : v) x /= nv;

        Extended shift = Extended(out.eigenvalues[j]);
        // Tiny spread inside a cluster keeps the iterates from collapsing
        // onto the same direction before orthogonalization.
        if (!cluster.empty())
            shift += Extended(cluster.size()) * Extended(scale) * Extended(1e-16);

        inverse_iterate(h, shift, v, 2);
        for (const auto& prev : cluster) {
            Extended dot = 0;
            for (std::size_t i = 0; i < n; ++i) dot += prev[i] * v[i];
            for (std::size_t i = 0; i < n; ++i) v[i] -= dot * prev[i];
        }
        Extended nrm = norm2(v);
        if (nrm > 0)
            for (Extended& x : v) x /= nrm;

        // Rayleigh refinement: one more solve at the improved shift.
        Extended rho = rayleigh_quotient(h, v);
        inverse_iterate(h, rho, v, 1);
        if (!cluster.empty()) {
            for (const auto& prev : cluster) {
                Extended dot = 0;
                for (std::size_t i = 0; i < n; ++i) dot += prev[i] * v[i];
                for (std::size_t i = 0; i < n; ++i) v[i] -= dot * prev[i];
            }
            Extended nn = norm2(v);
            if (nn > 0)
                for (Extended& x : v) x /= nn;
        } else {
            // Isolated eigenvalue: rebuild the vector as a resolvent column
            // seeded at its own peak.  The triangular solves then produce the
            // exponentially small tail entries as stable products, instead of
            // burying them under the generic inverse-iteration floor.
            rho = rayleigh_quotient(h, v);
            std::size_t peak = 0;
            for (std::size_t i = 1; i < n; ++i)
                if (std::abs(static_cast<double>(v[i])) >
                    std::abs(static_cast<double>(v[peak])))
                    peak = i;
            std::vector<Extended> column(n, Extended(0));
            column[peak] = Extended(1);
            TridiagonalLU<Extended> lu(h.diagonal, h.off_diagonal, rho);
            if (!lu.exact_singular()) {
                lu.solve_in_place(column);
                Extended nc = norm2(column);
                if (nc > 0 && std::isfinite(static_cast<double>(nc))) {
                    for (Extended& x : column) x /= nc;
                    v = std::move(column);
                }
            }
        }
        rho = rayleigh_quotient(h, v);

        // Sign convention: first component above the representable floor is
        // positive.
        for (std::size_t i = 0; i < n; ++i) {
            if (std::abs(static_cast<double>(v[i])) > 1e-300) {
                if (v[i] < 0)
                    for (Extended& x : v) x = -x;
                break;
            }
        }

        out.eigenvalues[j] = static_cast<double>(rho);
        out.residuals[j] = static_cast<double>(residual_norm(h, v, rho));
        out.eigenvectors[j].resize(n);
        for (std::size_t i = 0; i < n; ++i) out.eigenvectors[j][i] = static_cast<double>(v[i]);
        cluster.push_back(std::move(v));
    }

    // Refinement can reorder near-degenerate values; restore ascending order.
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
        return out.eigenvalues[a] < out.eigenvalues[b];
    });
    TridiagonalEigensystem sorted;
    sorted.eigenvalues.resize(n);
    sorted.eigenvectors.resize(n);
    sorted.residuals.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        sorted.eigenvalues[i] = out.eigenvalues[perm[i]];
        sorted.eigenvectors[i] = std::move(out.eigenvectors[perm[i]]);
        sorted.residuals[i] = out.residuals[perm[i]];
    }

    // Worst off-diagonal Gram entry against immediate neighbours plus worst
    // normalization defect; distant pairs are orthogonal through symmetry.
    double worst = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double self = -1.0;
        for (double x : sorted.eigenvectors[j]) self += x * x;
        worst = std::max(worst, std::abs(self));
        for (std::size_t k = j + 1; k < std::min(j + 4, n); ++k) {
            double dot = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                dot += sorted.eigenvectors[j][i] * sorted.eigenvectors[k][i];
            worst = std::max(worst, std::abs(dot));
        }
    }
    sorted.orthonormality_error = worst;
    return sorted;
}

double resolvent_norm(const TridiagonalMatrix& h, double shift, double rel_tol,
                      int max_iterations) {
    const std::size_t n = h.size();
    TridiagonalLU<double> lu(h.diagonal, h.off_diagonal, shift);
    if (lu.exact_singular()) return std::numeric_limits<double>::infinity();

    std::vector<double> x(n);
    std::uint64_t state = 0x853c49e6748fea9bull;
    for (std::size_t i = 0; i < n; ++i) {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        x[i] = static_cast<double>(state >> 11) / 9007199254740992.0 - 0.5;
    }
    double nx = 0.0;
    for (double v : x) nx += v * v;
    nx = std::sqrt(nx);
    for (double& v : x) v /= nx;

    double estimate = 0.0;
    for (int it = 0; it < max_iterations; ++it) {
        std::vector<double> z = x;
        lu.solve_in_place(z);  // z = A x with A = (H - shift)^{-1}
        double nz = 0.0;
        for (double v : z) nz += v * v;
        nz = std::sqrt(nz);
        if (!std::isfinite(nz)) return std::numeric_limits<double>::infinity();

        double previous = estimate;
        estimate = nz;  // ||A x|| -> max |eig(A)| since x -> top eigenvector of A^2
        lu.solve_in_place(z);  // complete the A^2 power step
        double nz2 = 0.0;
        for (double v : z) nz2 += v * v;
        nz2 = std::sqrt(nz2);
        if (nz2 == 0.0) break;
        for (std::size_t i = 0; i < n; ++i) x[i] = z[i] / nz2;

        if (it > 3 && std::abs(estimate - previous) <= rel_tol * estimate) break;
    }
    return estimate;
}

}  // namespace qplocal
