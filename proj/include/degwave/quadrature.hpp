#pragma once

#include <array>

namespace degwave::quad {

// Gauss-Legendre rules on [-1, 1].
struct Gauss3 {
    static constexpr std::array<double, 3> nodes{-0.7745966692414833770, 0.0, 0.7745966692414833770};
    static constexpr std::array<double, 3> weights{5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
};

struct Gauss5 {
    static constexpr std::array<double, 5> nodes{-0.9061798459386639928, -0.5384693101056830910, 0.0,
                                                 0.5384693101056830910, 0.9061798459386639928};
    static constexpr std::array<double, 5> weights{0.2369268850561890875, 0.4786286704993664680,
                                                   0.5688888888888888889, 0.4786286704993664680,
                                                   0.2369268850561890875};
};

/// Integrates fn over [lo, hi] with the given rule.
template <class Rule, class Fn>
double integrate(double lo, double hi, Fn&& fn) {
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    double acc = 0.0;
    for (std::size_t q = 0; q < Rule::nodes.size(); ++q) {
        acc += Rule::weights[q] * fn(mid + half * Rule::nodes[q]);
    }
    return acc * half;
}

} // namespace degwave::quad
