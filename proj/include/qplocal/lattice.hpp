#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace qplocal {

/// Closed integer interval [a, b] of lattice sites.
struct LatticeInterval {
    long long a = 0;
    long long b = 0;

    LatticeInterval() = default;
    LatticeInterval(long long a_, long long b_) : a(a_), b(b_) {
        if (a > b) throw std::invalid_argument("LatticeInterval: a must be <= b");
    }

    /// [-N, N], the centered window of scale N.
    static LatticeInterval radius(long long n) { return {-n, n}; }

    std::size_t size() const { return static_cast<std::size_t>(b - a + 1); }
    long long site(std::size_t index) const { return a + static_cast<long long>(index); }
    bool contains(long long k) const { return k >= a && k <= b; }
    bool contains(const LatticeInterval& other) const { return other.a >= a && other.b <= b; }

    LatticeInterval shifted(long long k) const { return {a + k, b + k}; }

    bool operator==(const LatticeInterval&) const = default;
};

/// Symmetric tridiagonal matrix: diagonal of length n, off-diagonal of
/// length n-1 (entry i couples sites i and i+1).
struct TridiagonalMatrix {
    std::vector<double> diagonal;
    std::vector<double> off_diagonal;

    TridiagonalMatrix() = default;
    explicit TridiagonalMatrix(std::size_t n) : diagonal(n, 0.0), off_diagonal(n ? n - 1 : 0, 0.0) {}
    TridiagonalMatrix(std::vector<double> diag, std::vector<double> off);

    std::size_t size() const { return diagonal.size(); }

    /// Principal submatrix on rows/columns [lo, hi] (inclusive, 0-based).
    TridiagonalMatrix submatrix(std::size_t lo, std::size_t hi) const;

    /// y = A x
    void apply(const std::vector<double>& x, std::vector<double>& y) const;

    std::vector<std::vector<double>> to_dense() const;

    /// Row-sum (infinity) norm; equals the 1-norm by symmetry.
    double inf_norm() const;

    TridiagonalMatrix scaled(double factor) const;
};

}  // namespace qplocal
