#include "qplocal/lattice.hpp"

#include <cmath>

namespace qplocal {

TridiagonalMatrix::TridiagonalMatrix(std::vector<double> diag, std::vector<double> off)
    : diagonal(std::move(diag)), off_diagonal(std::move(off)) {
    if (diagonal.empty())
        throw std::invalid_argument("TridiagonalMatrix: empty diagonal");
    if (off_diagonal.size() + 1 != diagonal.size())
        throw std::invalid_argument("TridiagonalMatrix: off-diagonal length must be size-1");
    for (double v : diagonal)
        if (!std::isfinite(v)) throw std::invalid_argument("TridiagonalMatrix: non-finite entry");
    for (double v : off_diagonal)
        if (!std::isfinite(v)) throw std::invalid_argument("TridiagonalMatrix: non-finite entry");
}

TridiagonalMatrix TridiagonalMatrix::submatrix(std::size_t lo, std::size_t hi) const {
    if (lo > hi || hi >= size())
        throw std::invalid_argument("TridiagonalMatrix::submatrix: bad range");
    TridiagonalMatrix out;
    out.diagonal.assign(diagonal.begin() + lo, diagonal.begin() + hi + 1);
    if (hi > lo)
        out.off_diagonal.assign(off_diagonal.begin() + lo, off_diagonal.begin() + hi);
    return out;
}

void TridiagonalMatrix::apply(const std::vector<double>& x, std::vector<double>& y) const {
    const std::size_t n = size();
    if (x.size() != n) throw std::invalid_argument("TridiagonalMatrix::apply: dimension mismatch");
    y.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = diagonal[i] * x[i];
        if (i > 0) acc += off_diagonal[i - 1] * x[i - 1];
        if (i + 1 < n) acc += off_diagonal[i] * x[i + 1];
        y[i] = acc;
    }
}

std::vector<std::vector<double>> TridiagonalMatrix::to_dense() const {
    const std::size_t n = size();
    std::vector<std::vector<double>> dense(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        dense[i][i] = diagonal[i];
        if (i + 1 < n) {
            dense[i][i + 1] = off_diagonal[i];
            dense[i + 1][i] = off_diagonal[i];
        }
    }
    return dense;
}

double TridiagonalMatrix::inf_norm() const {
    double best = 0.0;
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i) {
        double row = std::abs(diagonal[i]);
        if (i > 0) row += std::abs(off_diagonal[i - 1]);
        if (i + 1 < n) row += std::abs(off_diagonal[i]);
        best = std::max(best, row);
    }
    return best;
}

TridiagonalMatrix TridiagonalMatrix::scaled(double factor) const {
    TridiagonalMatrix out = *this;
    for (double& v : out.diagonal) v *= factor;
    for (double& v : out.off_diagonal) v *= factor;
    return out;
}

}  // namespace qplocal
