#include "degwave/estimators.hpp"

#include "degwave/errors.hpp"
#include "degwave/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace degwave {

void require_resolved(const Grid& grid, double epsilon, std::size_t min_cells) {
    const std::size_t cells = grid.cells_overlapping(1.0 - epsilon, 1.0);
    if (cells < min_cells) {
        std::ostringstream msg;
        msg << "eps-neighbourhood (1 - " << epsilon << ", 1) spans " << cells << " cells, need " << min_cells
            << "; a uniform mesh needs N >= " << static_cast<std::size_t>(std::ceil(min_cells / epsilon - 1e-9));
        throw ConfigError(msg.str());
    }
}

namespace {

void require_epsilon(double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw ArgumentError("epsilon must lie in (0, 1)");
    }
}

double value_at(const Grid& grid, std::span<const double> u, double x) {
    const std::size_t c = grid.locate(x);
    const double lam = (x - grid.node(c)) / grid.width(c);
    return u[c] * (1.0 - lam) + u[c + 1] * lam;
}

double relative(double slack, double rhs) {
    if (rhs > 0.0) {
        return slack / rhs;
    }
    return slack == 0.0 ? 0.0 : -std::numeric_limits<double>::infinity();
}

double ratio_or_zero(double num, double den) {
    if (den == 0.0) {
        return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    return num / den;
}

} // namespace

double theta_functional(const SpaceTimeField& u, double epsilon) {
    require_epsilon(epsilon);
    const Grid& grid = u.grid();
    require_resolved(grid, epsilon);
    std::vector<double> per_level(u.levels());
    for (std::size_t k = 0; k < u.levels(); ++k) {
        per_level[k] = integrate_square(grid, u.level(k), 1.0 - epsilon, 1.0);
    }
    return trapezoid(u.times(), per_level) / (epsilon * epsilon * epsilon);
}

double g_functional(const SpaceTimeField& u, double epsilon, const TimeSeries* trace) {
    if (epsilon == 0.0) {
        if (trace == nullptr) {
            throw ArgumentError("G(0) needs the boundary trace series");
        }
        return trace->l2_squared();
    }
    require_epsilon(epsilon);
    const Grid& grid = u.grid();
    require_resolved(grid, epsilon);
    std::vector<double> per_level(u.levels());
    for (std::size_t k = 0; k < u.levels(); ++k) {
        per_level[k] = integrate_weighted_gradient_square(grid, u.level(k), 1.0 - epsilon, 1.0);
    }
    return trapezoid(u.times(), per_level) / epsilon;
}

double n0(const WaveData& data) {
    const double f = l1_l2_norm(data.f);
    const double u0 = h1_alpha_norm(data.u0);
    const double u1 = l2_norm(data.u1);
    return f * f + u0 * u0 + u1 * u1;
}

double hidden_regularity_ratio(const WaveSolution& solution, const WaveData& data) {
    const double f = l1_l2_norm(data.f);
    return ratio_or_zero(solution.trace.l2_squared(), f * f + energy(solution, 0));
}

double well_posedness_ratio(const WaveSolution& solution, const WaveData& data) {
    const Grid& grid = solution.grid();
    double sup = 0.0;
    for (std::size_t k = 0; k < solution.levels(); ++k) {
        const auto u = solution.u.level(k);
        const auto v = solution.v.level(k);
        const double s = integrate_square(grid, v, 0.0, 1.0) + integrate_square(grid, u, 0.0, 1.0) +
                         integrate_weighted_gradient_square(grid, u, 0.0, 1.0);
        sup = std::max(sup, s);
    }
    return ratio_or_zero(sup, n0(data));
}

NeighborhoodTerms energy_neighborhood_terms(const Grid& grid, std::span<const double> u,
                                            std::span<const double> v, double epsilon, double epsilon0) {
    if (!(epsilon > 0.0 && epsilon < epsilon0 && epsilon0 < 1.0)) {
        throw ArgumentError("energy neighbourhood check needs 0 < eps < eps0 < 1");
    }
    NeighborhoodTerms t;
    t.lhs = integrate_square(grid, u, 1.0 - epsilon, 1.0) / (epsilon * epsilon);
    t.rhs = energy(grid, u, v) / (2.0 * std::pow(1.0 - epsilon0, grid.alpha()));
    return t;
}

bool EnergyNeighborhoodReport::holds(double rel_tol) const {
    return min_relative_slack >= -rel_tol && tfc_min_relative_slack >= -rel_tol;
}

EnergyNeighborhoodReport energy_neighborhood_check(const WaveSolution& solution, double epsilon,
                                                   double epsilon0, std::uint64_t seed) {
    const Grid& grid = solution.grid();
    EnergyNeighborhoodReport rep;
    rep.epsilon = epsilon;
    rep.epsilon0 = epsilon0;
    const std::size_t levels = solution.levels();
    rep.times.assign(solution.u.times().begin(), solution.u.times().end());
    rep.lhs.resize(levels);
    rep.rhs.resize(levels);
    rep.slack.resize(levels);
    rep.min_relative_slack = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < levels; ++k) {
        const auto terms = energy_neighborhood_terms(grid, solution.u.level(k), solution.v.level(k), epsilon, epsilon0);
        rep.lhs[k] = terms.lhs;
        rep.rhs[k] = terms.rhs;
        rep.slack[k] = terms.slack();
        rep.min_relative_slack = std::min(rep.min_relative_slack, relative(terms.slack(), terms.rhs));
    }

    std::mt19937_64 rng(seed);
    rep.tfc_min_relative_slack = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 10; ++i) {
        const std::size_t k = std::min<std::size_t>(levels - 1, static_cast<std::size_t>(uniform01(rng) * levels));
        const double x = uniform(rng, 1.0 - epsilon0, 1.0);
        const auto u = solution.u.level(k);
        const double ux = value_at(grid, u, x);
        TfcSpot spot{rep.times[k], x, ux * ux, (1.0 - x) * integrate_gradient_square(grid, u, x, 1.0)};
        rep.tfc_min_relative_slack = std::min(rep.tfc_min_relative_slack, relative(spot.rhs - spot.lhs, spot.rhs));
        rep.tfc.push_back(spot);
    }
    return rep;
}

void SweepSettings::validate() const {
    auto fail = [](const std::string& path, const std::string& what) { throw ConfigError(path + ": " + what); };
    if (alphas.empty()) {
        fail("alphas", "at least one value required");
    }
    for (double a : alphas) {
        if (!(a > 0.0 && a < 2.0)) {
            fail("alphas", "every alpha must lie in (0, 2)");
        }
    }
    if (!(epsilon0 > 0.0 && epsilon0 < 1.0)) {
        fail("epsilon0", "must lie in (0, 1)");
    }
    for (double e : epsilons) {
        if (!(e > 0.0 && e < epsilon0)) {
            fail("epsilons", "every eps must lie in (0, epsilon0)");
        }
    }
    if (!(T > 0.0)) {
        fail("T", "must be positive");
    }
    if (levels.empty()) {
        fail("levels", "at least one mesh size required");
    }
    if (!(steps_per_cell > 0.0)) {
        fail("steps_per_cell", "must be positive");
    }
    for (std::size_t n : levels) {
        for (double e : epsilons) {
            if (static_cast<double>(n) * e < 8.0 - 1e-9) {
                std::ostringstream msg;
                msg << "N = " << n << " leaves fewer than 8 cells in (1 - " << e << ", 1); minimum mesh is N = "
                    << static_cast<std::size_t>(std::ceil(8.0 / e - 1e-9));
                fail("levels", msg.str());
            }
        }
    }
}

namespace {

struct TaskOutput {
    std::optional<DatumRecord> datum;
    std::vector<RatioRecord> ratios;
    std::optional<std::string> skipped;
};

double stability(const std::vector<double>& sups) {
    if (sups.size() < 2) {
        return 0.0;
    }
    const double prev = sups[sups.size() - 2];
    const double last = sups.back();
    if (prev == 0.0) {
        return last == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    return std::abs(last - prev) / prev;
}

} // namespace

EstimateReport theorem_ratio_sweep(const SweepSettings& settings,
                                   const std::function<std::vector<NamedData>(double alpha)>& suite) {
    settings.validate();

    struct Task {
        double alpha;
        std::size_t level;
        NamedData datum;
    };
    std::vector<Task> tasks;
    for (double alpha : settings.alphas) {
        const auto data = suite(alpha);
        for (std::size_t n : settings.levels) {
            for (const auto& d : data) {
                tasks.push_back({alpha, n, d});
            }
        }
    }

    auto run = [&](std::size_t i) {
        const Task& task = tasks[i];
        const Degeneracy deg(task.alpha);
        WaveProblem problem;
        problem.grid = Grid::uniform(task.level, deg);
        problem.T = settings.T;
        problem.nt = static_cast<std::size_t>(
            std::ceil(settings.steps_per_cell * settings.T * static_cast<double>(task.level) - 1e-9));
        problem.scheme = settings.scheme;
        problem.mass = settings.mass;

        TaskOutput out;
        const WaveData data = task.datum.make(problem);
        const double size = n0(data);
        if (size == 0.0) {
            std::ostringstream msg;
            msg << "alpha=" << task.alpha << " N=" << task.level << ": " << task.datum.id << " (N0 = 0)";
            out.skipped = msg.str();
            return out;
        }
        const WaveSolution sol = solve_weak(problem, data);

        DatumRecord rec;
        rec.alpha = task.alpha;
        rec.datum_id = task.datum.id;
        rec.level = task.level;
        rec.n0 = size;
        rec.energy0 = energy(sol, 0);
        const double f = l1_l2_norm(data.f);
        rec.f_l1l2_squared = f * f;
        rec.trace_l2_squared = sol.trace.l2_squared();
        rec.hidden_ratio = hidden_regularity_ratio(sol, data);
        rec.well_posedness_ratio = well_posedness_ratio(sol, data);
        out.datum = rec;

        const double factor = 1.0 / (2.0 * std::pow(1.0 - settings.epsilon0, task.alpha));
        for (std::size_t j = 0; j < settings.epsilons.size(); ++j) {
            const double eps = settings.epsilons[j];
            RatioRecord r;
            r.alpha = task.alpha;
            r.regime = deg.regime();
            r.datum_id = task.datum.id;
            r.epsilon = eps;
            r.theta = theta_functional(sol.u, eps);
            r.g = g_functional(sol.u, eps);
            r.n0 = size;
            r.theta_ratio = r.theta / size;
            r.g_ratio = r.g / size;
            r.level = task.level;
            r.theta_below_g = r.theta <= factor * r.g * (1.0 + 1e-12) + 1e-300;
            const auto en = energy_neighborhood_check(sol, eps, settings.epsilon0,
                                                      derive_seed(settings.suite.seed, 1000003 * i + j));
            r.energy_relative_slack = en.min_relative_slack;
            r.tfc_relative_slack = en.tfc_min_relative_slack;
            out.ratios.push_back(r);
        }
        return out;
    };

    const auto outputs = parallel_map(tasks.size(), settings.workers, run);

    EstimateReport report;
    report.epsilon_grid = settings.epsilons;
    report.epsilon0 = settings.epsilon0;
    report.T = settings.T;
    for (const auto& o : outputs) {
        if (o.skipped) {
            report.skipped.push_back(*o.skipped);
        }
        if (o.datum) {
            report.data.push_back(*o.datum);
        }
        report.records.insert(report.records.end(), o.ratios.begin(), o.ratios.end());
    }

    for (double alpha : settings.alphas) {
        AlphaSummary s;
        s.alpha = alpha;
        s.regime = Degeneracy(alpha).regime();
        s.levels = settings.levels;
        s.min_energy_relative_slack = std::numeric_limits<double>::infinity();
        s.min_tfc_relative_slack = std::numeric_limits<double>::infinity();
        for (std::size_t n : settings.levels) {
            double st = 0.0, sg = 0.0, str = 0.0, sh = 0.0, sw = 0.0;
            for (const auto& r : report.records) {
                if (r.alpha != alpha || r.level != n) {
                    continue;
                }
                s.all_finite = s.all_finite && std::isfinite(r.theta_ratio) && std::isfinite(r.g_ratio);
                st = std::max(st, r.theta_ratio);
                sg = std::max(sg, r.g_ratio);
                s.theta_below_g_everywhere = s.theta_below_g_everywhere && r.theta_below_g;
                s.min_energy_relative_slack = std::min(s.min_energy_relative_slack, r.energy_relative_slack);
                s.min_tfc_relative_slack = std::min(s.min_tfc_relative_slack, r.tfc_relative_slack);
            }
            for (const auto& d : report.data) {
                if (d.alpha != alpha || d.level != n) {
                    continue;
                }
                s.all_finite = s.all_finite && std::isfinite(d.hidden_ratio) && std::isfinite(d.well_posedness_ratio);
                str = std::max(str, d.trace_l2_squared / d.n0);
                sh = std::max(sh, d.hidden_ratio);
                sw = std::max(sw, d.well_posedness_ratio);
            }
            s.sup_theta_ratio.push_back(st);
            s.sup_g_ratio.push_back(sg);
            s.sup_trace_ratio.push_back(str);
            s.sup_hidden_ratio.push_back(sh);
            s.sup_well_posedness_ratio.push_back(sw);
        }
        if (!std::isfinite(s.min_energy_relative_slack)) {
            s.min_energy_relative_slack = 0.0;
        }
        if (!std::isfinite(s.min_tfc_relative_slack)) {
            s.min_tfc_relative_slack = 0.0;
        }
        s.theta_stability = stability(s.sup_theta_ratio);
        s.g_stability = stability(s.sup_g_ratio);
        s.hidden_stability = stability(s.sup_hidden_ratio);
        s.well_posedness_stability = stability(s.sup_well_posedness_ratio);
        s.theta_constant = s.sup_theta_ratio.back();
        s.theta_combination = s.sup_g_ratio.back() / (2.0 * std::pow(1.0 - settings.epsilon0, alpha));
        report.summaries.push_back(std::move(s));
    }
    return report;
}

EstimateReport theorem_ratio_sweep(const SweepSettings& settings) {
    return theorem_ratio_sweep(settings, [&](double alpha) {
        const auto suite = random_suite(Degeneracy(alpha).regime(), settings.suite);
        std::vector<NamedData> out;
        for (const auto& d : suite) {
            out.push_back({d.id, [d](const WaveProblem& p) { return d.wave_data(p); }});
        }
        return out;
    });
}

} // namespace degwave
