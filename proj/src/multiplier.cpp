#include "degwave/multiplier.hpp"

#include "degwave/errors.hpp"
#include "degwave/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace degwave {

MultiplierProfile MultiplierProfile::build(double delta, double gamma) {
    if (!(delta > 0.0 && gamma > 0.0 && gamma < delta && delta + gamma < 1.0)) {
        std::ostringstream msg;
        msg << "multiplier needs 0 < gamma < delta and delta + gamma < 1, got delta = " << delta
            << ", gamma = " << gamma;
        throw DomainError(msg.str());
    }
    MultiplierProfile p(delta, gamma);
    if (p.junction_mismatch() > 1e-12) {
        throw NumericalError("multiplier junctions do not match to C^1");
    }
    return p;
}

// Pieces are selected by x but evaluated in y = 1 - x, which is exact on
// [1/2, 1]; the quadratic piece uses its offset from the left junction,
// gamma - (y - delta), so no O(1) cancellation is divided by delta * gamma.
double MultiplierProfile::value(double x) const {
    if (x <= left_junction()) {
        return 0.0;
    }
    const double y = 1.0 - x;
    if (x < right_junction()) {
        const double s = std::max(gamma_ - (y - delta_), 0.0);
        return s * s / (2.0 * delta_ * gamma_);
    }
    return 1.0 + gamma_ / (2.0 * delta_) - y / delta_;
}

double MultiplierProfile::d1(double x) const {
    if (x <= left_junction()) {
        return 0.0;
    }
    if (x < right_junction()) {
        const double s = std::max(gamma_ - ((1.0 - x) - delta_), 0.0);
        return s / (delta_ * gamma_);
    }
    return 1.0 / delta_;
}

double MultiplierProfile::d2(double x) const {
    if (x > left_junction() && x < right_junction()) {
        return 1.0 / (delta_ * gamma_);
    }
    return 0.0;
}

double MultiplierProfile::junction_mismatch() const {
    // Each piece at the junction in its own coordinate: the quadratic piece
    // has offset 0 at the left junction and gamma at the right one, the linear
    // piece has y = delta.
    const double q_left = 0.0;
    const double qd_left = 0.0;
    const double q_val = gamma_ * gamma_ / (2.0 * delta_ * gamma_);
    const double q_der = gamma_ / (delta_ * gamma_);
    const double l_val = 1.0 + gamma_ / (2.0 * delta_) - delta_ / delta_;
    const double l_der = 1.0 / delta_;
    return std::max({std::abs(q_left), std::abs(qd_left), std::abs(q_val - l_val), std::abs(q_der - l_der)});
}

RhoPropertyReport rho_property_check(const MultiplierProfile& profile, std::size_t samples) {
    if (samples < 2) {
        throw ArgumentError("rho_property_check needs at least two samples");
    }
    RhoPropertyReport rep;
    rep.samples = samples;
    rep.junction_mismatch = profile.junction_mismatch();
    rep.d1_bound = 2.0 / profile.kappa();
    const double inv_delta = 1.0 / profile.delta();
    const double curvature = 1.0 / (profile.delta() * profile.gamma());

    double prev = profile.value(0.0);
    rep.min_value = prev;
    for (std::size_t i = 0; i < samples; ++i) {
        const double x = static_cast<double>(i) / static_cast<double>(samples - 1);
        const double r = profile.value(x);
        const double r1 = profile.d1(x);
        const double r2 = profile.d2(x);
        rep.min_value = std::min(rep.min_value, r);
        rep.max_decrease = std::max(rep.max_decrease, prev - r);
        rep.max_d1 = std::max(rep.max_d1, std::abs(r1));
        if (x > profile.right_junction() && x < 1.0) {
            rep.plateau_error = std::max(rep.plateau_error, std::abs(r1 - inv_delta));
            rep.linear_curvature = std::max(rep.linear_curvature, std::abs(r2));
        }
        if (x > profile.left_junction() && x < profile.right_junction()) {
            rep.curvature_error = std::max(rep.curvature_error, std::abs(r2 - curvature));
        }
        prev = r;
    }

    auto fail = [&](const std::string& what) { rep.violations.push_back(what); };
    if (rep.junction_mismatch > 1e-12) {
        fail("junction mismatch above 1e-12");
    }
    if (rep.max_decrease > 0.0) {
        fail("rho decreases between samples");
    }
    if (rep.min_value < 0.0) {
        fail("rho takes negative values");
    }
    if (profile.value(profile.left_junction()) != 0.0) {
        fail("rho(1 - kappa) != 0");
    }
    if (rep.max_d1 > rep.d1_bound) {
        fail("sup |rho'| exceeds 2/kappa");
    }
    if (rep.plateau_error > 1e-12 * inv_delta) {
        fail("rho' differs from 1/delta on (1 - delta, 1)");
    }
    if (rep.curvature_error > 1e-12 * curvature) {
        fail("rho'' differs from 1/(delta gamma) on the quadratic piece");
    }
    if (rep.linear_curvature != 0.0) {
        fail("rho'' nonzero on the linear piece");
    }
    return rep;
}

double MultiplierTerms::residual() const {
    const double l = lhs();
    const double r = rhs();
    return std::abs(l - r) / std::max({std::abs(l), std::abs(r), 1.0});
}

namespace {

struct Piece {
    std::size_t cell;
    double lo;
    double hi;
};

// Sub-intervals of (1 - kappa, 1) aligned with both grid nodes and junctions.
std::vector<Piece> support_pieces(const Grid& grid, const MultiplierProfile& rho) {
    const double breaks[] = {rho.left_junction(), rho.right_junction(), 1.0};
    std::vector<Piece> out;
    for (std::size_t c = grid.locate(rho.left_junction()); c < grid.cells(); ++c) {
        double lo = std::max(grid.node(c), rho.left_junction());
        const double hi = grid.node(c + 1);
        for (double b : breaks) {
            if (b > lo && b < hi) {
                out.push_back({c, lo, b});
                lo = b;
            }
        }
        if (hi > lo) {
            out.push_back({c, lo, hi});
        }
    }
    return out;
}

} // namespace

MultiplierTerms multiplier_identity_terms(const WaveSolution& solution, const WaveData& data,
                                          const MultiplierProfile& profile) {
    const Grid& grid = solution.grid();
    const std::size_t resolved = grid.cells_overlapping(profile.left_junction(), 1.0);
    if (resolved < 8) {
        std::ostringstream msg;
        msg << "multiplier support (1 - kappa, 1) spans " << resolved << " cells; at least 8 are required "
            << "(need N >= " << static_cast<std::size_t>(std::ceil(8.0 / profile.kappa())) << " on a uniform grid)";
        throw ConfigError(msg.str());
    }
    const double alpha = grid.alpha();
    const auto pieces = support_pieces(grid, profile);
    const std::size_t levels = solution.levels();
    const auto times = solution.u.times();

    auto source_at = [&](std::size_t k, std::size_t c, double x) {
        if (data.f_exact) {
            return data.f_exact(times[k], x);
        }
        const auto f = data.f.level(k);
        const double lam = (x - grid.node(c)) / grid.width(c);
        return f[c] * (1.0 - lam) + f[c + 1] * lam;
    };

    // Per level: gradient, mixed, degeneracy, source_gradient, source_value, plateau.
    std::vector<std::array<double, 6>> per_level(levels);
    for (std::size_t k = 0; k < levels; ++k) {
        const auto u = solution.u.level(k);
        std::array<double, 6> acc{};
        for (const Piece& p : pieces) {
            const double x0 = grid.node(p.cell);
            const double h = grid.width(p.cell);
            const double ux = (u[p.cell + 1] - u[p.cell]) / h;
            const bool plateau = p.lo >= profile.right_junction();
            const double mid = 0.5 * (p.lo + p.hi);
            const double half = 0.5 * (p.hi - p.lo);
            for (std::size_t q = 0; q < quad::Gauss3::nodes.size(); ++q) {
                const double x = mid + half * quad::Gauss3::nodes[q];
                const double w = half * quad::Gauss3::weights[q];
                const double uval = u[p.cell] + ux * (x - x0);
                const double xa = std::pow(x, alpha);
                const double r = profile.value(x);
                const double r1 = profile.d1(x);
                const double r2 = profile.d2(0.5 * (p.lo + p.hi));
                const double f = source_at(k, p.cell, x);
                acc[0] += w * 2.0 * xa * ux * ux * r1;
                acc[1] += w * xa * ux * uval * r2;
                acc[2] += w * alpha * std::pow(x, alpha - 1.0) * ux * ux * r;
                acc[3] += w * 2.0 * f * ux * r;
                acc[4] += w * f * uval * r1;
                if (plateau) {
                    acc[5] += w * 2.0 * xa * ux * ux * r1;
                }
            }
        }
        per_level[k] = acc;
    }

    auto time_integral = [&](std::size_t j) {
        std::vector<double> s(levels);
        for (std::size_t k = 0; k < levels; ++k) {
            s[k] = per_level[k][j];
        }
        return trapezoid(times, s);
    };

    // Single-time terms at a level: \int 2 v u_x rho and \int v u rho'.
    auto endpoint_terms = [&](std::span<const double> u, std::span<const double> v) {
        double grad = 0.0;
        double val = 0.0;
        for (const Piece& p : pieces) {
            const double x0 = grid.node(p.cell);
            const double h = grid.width(p.cell);
            const double ux = (u[p.cell + 1] - u[p.cell]) / h;
            const double vx = (v[p.cell + 1] - v[p.cell]) / h;
            grad += quad::integrate<quad::Gauss3>(p.lo, p.hi, [&](double x) {
                return 2.0 * (v[p.cell] + vx * (x - x0)) * ux * profile.value(x);
            });
            val += quad::integrate<quad::Gauss3>(p.lo, p.hi, [&](double x) {
                return (v[p.cell] + vx * (x - x0)) * (u[p.cell] + ux * (x - x0)) * profile.d1(x);
            });
        }
        return std::pair{grad, val};
    };

    MultiplierTerms terms;
    terms.gradient = time_integral(0);
    terms.mixed = time_integral(1);
    terms.degeneracy = time_integral(2);
    terms.source_gradient = time_integral(3);
    terms.source_value = time_integral(4);
    terms.plateau_gradient = time_integral(5);
    terms.trace = profile.value(1.0) * solution.trace.l2_squared();
    const auto [fg, fv] = endpoint_terms(solution.u.level(levels - 1), solution.v.level(levels - 1));
    const auto [ig, iv] = endpoint_terms(solution.u.level(0), solution.v.level(0));
    terms.final_gradient = fg;
    terms.final_value = fv;
    terms.initial_gradient = ig;
    terms.initial_value = iv;
    return terms;
}

double multiplier_identity_residual(const WaveSolution& solution, const WaveData& data,
                                    const MultiplierProfile& profile) {
    return multiplier_identity_terms(solution, data, profile).residual();
}

} // namespace degwave
