#include "qplocal/tridiag_solve.hpp"

namespace qplocal {

TridiagonalLDLT::TridiagonalLDLT(const std::vector<double>& diagonal,
                                 const std::vector<double>& off, double pivot_tol) {
    const std::size_t n = diagonal.size();
    d_.resize(n);
    l_.assign(n > 0 ? n - 1 : 0, 0.0);

    double scale = 0.0;
    for (double v : diagonal) scale = std::max(scale, std::abs(v));
    for (double v : off) scale = std::max(scale, std::abs(v));
    const double floor = pivot_tol * std::max(scale, 1.0);

    valid_ = true;
    for (std::size_t i = 0; i < n; ++i) {
        double pivot = diagonal[i];
        if (i > 0) pivot -= l_[i - 1] * off[i - 1];
        if (std::abs(pivot) < floor) {
            valid_ = false;
            return;
        }
        d_[i] = pivot;
        if (i + 1 < n) l_[i] = off[i] / pivot;
    }
}

void TridiagonalLDLT::solve_in_place(std::vector<double>& b) const {
    const std::size_t n = d_.size();
    for (std::size_t i = 1; i < n; ++i) b[i] -= l_[i - 1] * b[i - 1];
    for (std::size_t i = 0; i < n; ++i) b[i] /= d_[i];
    for (std::size_t idx = n; idx-- > 1;) b[idx - 1] -= l_[idx - 1] * b[idx];
}

bool tridiagonal_solve(const TridiagonalMatrix& h, std::vector<double>& b) {
    TridiagonalLDLT ldlt(h.diagonal, h.off_diagonal, 1e-10);
    if (ldlt.valid()) {
        ldlt.solve_in_place(b);
        return true;
    }
    TridiagonalLU<double> lu(h.diagonal, h.off_diagonal);
    if (lu.exact_singular()) return false;
    lu.solve_in_place(b);
    return true;
}

}  // namespace qplocal
