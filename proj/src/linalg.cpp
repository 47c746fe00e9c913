#include "degwave/linalg.hpp"

#include "degwave/errors.hpp"

#include <cmath>

namespace degwave {

double TridiagonalMatrix::at(std::size_t i, std::size_t j) const {
    if (i == j) {
        return diag[i];
    }
    if (j == i + 1) {
        return upper[i];
    }
    if (i == j + 1) {
        return lower[j];
    }
    return 0.0;
}

double TridiagonalMatrix::apply_row(std::size_t i, std::span<const double> x) const {
    double y = diag[i] * x[i];
    if (i > 0) {
        y += lower[i - 1] * x[i - 1];
    }
    if (i + 1 < diag.size()) {
        y += upper[i] * x[i + 1];
    }
    return y;
}

std::vector<double> TridiagonalMatrix::apply(std::span<const double> x) const {
    if (x.size() != diag.size()) {
        throw ArgumentError("TridiagonalMatrix::apply: size mismatch");
    }
    std::vector<double> y(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) {
        y[i] = apply_row(i, x);
    }
    return y;
}

TridiagonalMatrix TridiagonalMatrix::block(std::size_t first, std::size_t last) const {
    TridiagonalMatrix out(last - first + 1);
    for (std::size_t i = first; i <= last; ++i) {
        out.diag[i - first] = diag[i];
        if (i < last) {
            out.upper[i - first] = upper[i];
            out.lower[i - first] = lower[i];
        }
    }
    return out;
}

TridiagonalMatrix TridiagonalMatrix::combine(double a, const TridiagonalMatrix& other, double b) const {
    TridiagonalMatrix out(size());
    for (std::size_t i = 0; i < size(); ++i) {
        out.diag[i] = a * diag[i] + b * other.diag[i];
    }
    for (std::size_t i = 0; i < lower.size(); ++i) {
        out.lower[i] = a * lower[i] + b * other.lower[i];
        out.upper[i] = a * upper[i] + b * other.upper[i];
    }
    return out;
}

ThomasSolver::ThomasSolver(const TridiagonalMatrix& a)
    : lower_(a.lower), upper_prime_(a.upper.size()), denom_(a.size()) {
    const std::size_t n = a.size();
    if (n == 0) {
        return;
    }
    double prev_up = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = a.diag[i] - (i > 0 ? a.lower[i - 1] * prev_up : 0.0);
        if (!(std::abs(d) > 0.0) || !std::isfinite(d)) {
            throw NumericalError("tridiagonal solve: zero pivot");
        }
        denom_[i] = d;
        if (i + 1 < n) {
            prev_up = a.upper[i] / d;
            upper_prime_[i] = prev_up;
        }
    }
}

std::vector<double> ThomasSolver::solve(std::span<const double> rhs) const {
    const std::size_t n = denom_.size();
    if (rhs.size() != n) {
        throw ArgumentError("ThomasSolver::solve: size mismatch");
    }
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double carry = i > 0 ? lower_[i - 1] * y[i - 1] : 0.0;
        y[i] = (rhs[i] - carry) / denom_[i];
    }
    for (std::size_t i = n - 1; i-- > 0;) {
        y[i] -= upper_prime_[i] * y[i + 1];
    }
    return y;
}

} // namespace degwave
