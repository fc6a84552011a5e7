#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "qplocal/lattice.hpp"

namespace qplocal {

/// LU factorization of a symmetric tridiagonal matrix with partial pivoting
/// (row interchanges between adjacent rows only, which keeps the factor
/// bandwidth at two superdiagonals).  Templated so the same code runs the
/// production double path and the extended-precision refinement path.
template <typename Real>
class TridiagonalLU {
public:
    /// Factorizes diag/off shifted by -shift.  exact_singular() reports a
    /// zero pivot; the factorization is still usable for inverse iteration
    /// after the caller perturbs the shift.
    TridiagonalLU(const std::vector<double>& diagonal, const std::vector<double>& off,
                  Real shift = Real(0)) {
        const std::size_t n = diagonal.size();
        d_.resize(n);
        dl_.assign(n > 0 ? n - 1 : 0, Real(0));
        du_.assign(n > 0 ? n - 1 : 0, Real(0));
        du2_.assign(n > 1 ? n - 2 : 0, Real(0));
        swap_.assign(n > 0 ? n - 1 : 0, false);
        for (std::size_t i = 0; i < n; ++i) d_[i] = Real(diagonal[i]) - shift;
        for (std::size_t i = 0; i + 1 < n; ++i) dl_[i] = du_[i] = Real(off[i]);

        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (std::abs(d_[i]) >= std::abs(dl_[i])) {
                if (d_[i] != Real(0)) {
                    Real fact = dl_[i] / d_[i];
                    dl_[i] = fact;
                    d_[i + 1] -= fact * du_[i];
                } else {
                    singular_ = true;
                }
            } else {
                Real fact = d_[i] / dl_[i];
                d_[i] = dl_[i];
                dl_[i] = fact;
                Real tmp = du_[i];
                du_[i] = d_[i + 1];
                d_[i + 1] = tmp - fact * d_[i + 1];
                if (i + 2 < n) {
                    du2_[i] = du_[i + 1];
                    du_[i + 1] = -fact * du_[i + 1];
                }
                swap_[i] = true;
            }
        }
        if (n > 0 && d_[n - 1] == Real(0)) singular_ = true;
    }

    bool exact_singular() const { return singular_; }

    /// Smallest |U_ii|; a cheap lower-bound proxy for closeness to
    /// singularity.
    Real min_pivot() const {
        Real best = std::abs(d_.empty() ? Real(0) : d_[0]);
        for (const Real& v : d_) best = std::min(best, std::abs(v));
        return best;
    }

    void solve_in_place(std::vector<Real>& b) const {
        const std::size_t n = d_.size();
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (!swap_[i]) {
                b[i + 1] -= dl_[i] * b[i];
            } else {
                Real tmp = b[i];
                b[i] = b[i + 1];
                b[i + 1] = tmp - dl_[i] * b[i];
            }
        }
        if (n == 0) return;
        b[n - 1] /= d_[n - 1];
        if (n == 1) return;
        b[n - 2] = (b[n - 2] - du_[n - 2] * b[n - 1]) / d_[n - 2];
        for (std::size_t idx = n - 1; idx-- > 1;) {
            std::size_t i = idx - 1;
            b[i] = (b[i] - du_[i] * b[i + 1] - du2_[i] * b[i + 2]) / d_[i];
        }
    }

private:
    std::vector<Real> d_, dl_, du_, du2_;
    std::vector<bool> swap_;
    bool singular_ = false;
};

/// Fast LDL^T path for the well-behaved case.  valid() turns false when a
/// pivot falls under tol * scale; callers then switch to the pivoted LU.
class TridiagonalLDLT {
public:
    TridiagonalLDLT(const std::vector<double>& diagonal, const std::vector<double>& off,
                    double pivot_tol);
    bool valid() const { return valid_; }
    void solve_in_place(std::vector<double>& b) const;

private:
    std::vector<double> d_, l_;
    bool valid_ = false;
};

/// Solves H x = b, preferring LDL^T and falling back to pivoted LU.
/// Returns false when H is exactly singular.
bool tridiagonal_solve(const TridiagonalMatrix& h, std::vector<double>& b);

}  // namespace qplocal
