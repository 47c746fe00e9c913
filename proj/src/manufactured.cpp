#include "degwave/errors.hpp"
#include "degwave/wave.hpp"

#include <cmath>
#include <limits>

namespace degwave {

std::string_view to_string(CatalogEntry entry) {
    switch (entry) {
    case CatalogEntry::Zero:
        return "zero";
    case CatalogEntry::WdcPolynomial:
        return "wdc-poly";
    case CatalogEntry::SdcLinear:
        return "sdc-linear";
    }
    return "unknown";
}

CatalogEntry catalog_from_string(std::string_view name) {
    if (name == "zero") {
        return CatalogEntry::Zero;
    }
    if (name == "wdc-poly") {
        return CatalogEntry::WdcPolynomial;
    }
    if (name == "sdc-linear") {
        return CatalogEntry::SdcLinear;
    }
    throw ConfigError("unknown manufactured catalog entry '" + std::string(name) + "'");
}

ClosedFormSolution closed_form(CatalogEntry entry, double alpha) {
    const Degeneracy deg(alpha);
    switch (entry) {
    case CatalogEntry::Zero: {
        auto zero = [](double, double) { return 0.0; };
        return {zero, zero, zero, zero};
    }
    case CatalogEntry::WdcPolynomial:
        // (x^alpha (1 - 2x))_x = alpha x^{alpha-1} - 2 (alpha+1) x^alpha
        return {
            [](double t, double x) { return std::cos(t) * (x - x * x); },
            [](double t, double x) { return -std::sin(t) * (x - x * x); },
            [](double t, double x) { return std::cos(t) * (1.0 - 2.0 * x); },
            [alpha](double t, double x) {
                const double flux_x = alpha * std::pow(x, alpha - 1.0) - 2.0 * (alpha + 1.0) * std::pow(x, alpha);
                return -std::cos(t) * (x - x * x + flux_x);
            },
        };
    case CatalogEntry::SdcLinear:
        if (deg.regime() != Regime::SDC) {
            throw ConfigError("catalog entry sdc-linear has u(t,0) != 0 and needs alpha in [1,2)");
        }
        return {
            [](double t, double x) { return std::cos(t) * (1.0 - x); },
            [](double t, double x) { return -std::sin(t) * (1.0 - x); },
            [](double t, double) { return -std::cos(t); },
            [alpha](double t, double x) {
                return std::cos(t) * (alpha * std::pow(x, alpha - 1.0) - (1.0 - x));
            },
        };
    }
    throw ConfigError("unknown catalog entry");
}

ManufacturedProblem manufactured_problem(CatalogEntry entry, const WaveProblem& problem) {
    auto sol = closed_form(entry, problem.grid->alpha());
    auto u = sol.u;
    auto ut = sol.u_t;
    WaveData data = WaveData::from_functions(
        problem, sol.f, [u](double x) { return u(0.0, x); }, [ut](double x) { return ut(0.0, x); });
    SpaceTimeField exact = SpaceTimeField::sample(problem.grid, problem.times(), sol.u);
    return ManufacturedProblem{std::move(data), std::move(exact), std::move(sol)};
}

std::vector<ConvergenceRow> convergence_study(const ConvergenceSettings& settings) {
    if (settings.levels.size() < 3) {
        throw ConfigError("convergence study needs at least three refinement levels");
    }
    const Degeneracy deg(settings.alpha);
    std::vector<ConvergenceRow> rows;
    for (std::size_t cells : settings.levels) {
        WaveProblem problem;
        problem.grid = Grid::uniform(cells, deg);
        problem.T = settings.T;
        problem.nt = static_cast<std::size_t>(
            std::ceil(settings.steps_per_cell * settings.T * static_cast<double>(cells) - 1e-9));
        problem.scheme = settings.scheme;
        problem.mass = settings.mass;
        const auto mp = manufactured_problem(settings.entry, problem);
        const auto sol = solve_weak(problem, mp.data);

        ConvergenceRow row;
        row.cells = cells;
        row.steps = problem.nt;
        row.h = problem.grid->h_max();
        row.dt = problem.dt();
        std::vector<double> trace_diff(sol.levels());
        for (std::size_t k = 0; k < sol.levels(); ++k) {
            const double t = sol.u.times()[k];
            const double e = l2_distance(*problem.grid, sol.u.level(k), [&](double x) { return mp.solution.u(t, x); });
            row.l2_error = std::max(row.l2_error, e);
            const double d = sol.trace.values[k] - mp.solution.u_x(t, 1.0);
            trace_diff[k] = d * d;
        }
        row.trace_error = std::sqrt(trapezoid(sol.trace.times, trace_diff));
        row.order_l2 = std::numeric_limits<double>::quiet_NaN();
        row.order_trace = std::numeric_limits<double>::quiet_NaN();
        if (!rows.empty()) {
            const auto& prev = rows.back();
            const double ratio = prev.h / row.h;
            row.order_l2 = std::log(prev.l2_error / row.l2_error) / std::log(ratio);
            row.order_trace = std::log(prev.trace_error / row.trace_error) / std::log(ratio);
        }
        rows.push_back(row);
    }
    return rows;
}

} // namespace degwave
