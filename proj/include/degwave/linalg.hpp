#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace degwave {

/// Square tridiagonal matrix; lower[i] = A(i+1, i), upper[i] = A(i, i+1).
struct TridiagonalMatrix {
    std::vector<double> lower;
    std::vector<double> diag;
    std::vector<double> upper;

    explicit TridiagonalMatrix(std::size_t n = 0) : lower(n ? n - 1 : 0), diag(n), upper(n ? n - 1 : 0) {}

    std::size_t size() const noexcept { return diag.size(); }
    double at(std::size_t i, std::size_t j) const;

    /// y = A x.
    std::vector<double> apply(std::span<const double> x) const;
    /// Row i of A x only.
    double apply_row(std::size_t i, std::span<const double> x) const;
    /// Principal submatrix on rows/columns [first, last].
    TridiagonalMatrix block(std::size_t first, std::size_t last) const;
    /// Linear combination a*this + b*other.
    TridiagonalMatrix combine(double a, const TridiagonalMatrix& other, double b) const;
};

/// Thomas factorization without pivoting; intended for the SPD systems of
/// this library. Immutable once built, so solves may run concurrently.
class ThomasSolver {
public:
    ThomasSolver() = default;
    explicit ThomasSolver(const TridiagonalMatrix& a);

    std::size_t size() const noexcept { return denom_.size(); }
    std::vector<double> solve(std::span<const double> rhs) const;

private:
    std::vector<double> lower_;
    std::vector<double> upper_prime_;
    std::vector<double> denom_;
};

} // namespace degwave
