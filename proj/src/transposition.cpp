#include "degwave/transposition.hpp"

#include "degwave/errors.hpp"
#include "degwave/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace degwave {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

// (a, b) with the consistent P1 mass matrix, exact for P1 fields.
double mass_product(const TridiagonalMatrix& mass, std::span<const double> a, std::span<const double> b) {
    return dot(mass.apply(std::vector<double>(a.begin(), a.end())), b);
}

void require_problem_axis(const SpaceTimeField& f, const WaveProblem& problem, const char* what) {
    if (f.grid_ptr() != problem.grid || f.levels() != problem.nt + 1) {
        throw ArgumentError(std::string(what) + " must live on the problem grid and time axis");
    }
}

SpaceField representative_difference(const DualElement& a, const DualElement& b) {
    const auto& ra = a.representative();
    const auto& rb = b.representative();
    std::vector<double> d(ra.values().size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        d[i] = ra[i] - rb[i];
    }
    return SpaceField(ra.grid_ptr(), std::move(d), ra.tags());
}

} // namespace

VeryWeakData VeryWeakData::zero(const WaveProblem& problem) {
    return VeryWeakData{SpaceTimeField(problem.grid, problem.times()), SpaceField::zeros(problem.grid),
                        DualElement::from_l2(SpaceField::zeros(problem.grid))};
}

SpaceField lift_initial_velocity(const DualElement& z1) {
    return z1.representative().scaled(-1.0);
}

VeryWeakSolution solve_very_weak(const VeryWeakData& data, const WaveProblem& problem) {
    problem.validate();
    require_problem_axis(data.g, problem, "very weak source g");
    if (data.z0.grid_ptr() != problem.grid || data.z1.representative().grid_ptr() != problem.grid) {
        throw ArgumentError("very weak initial data must live on the problem grid");
    }

    // G(t_k) = \int_0^{t_k} g by the cumulative trapezoid rule.
    SpaceTimeField G(problem.grid, problem.times());
    const auto t = problem.times();
    for (std::size_t k = 1; k < G.levels(); ++k) {
        const double half = 0.5 * (t[k] - t[k - 1]);
        const auto prev = G.level(k - 1);
        const auto g0 = data.g.level(k - 1);
        const auto g1 = data.g.level(k);
        auto cur = G.level(k);
        for (std::size_t i = 0; i < cur.size(); ++i) {
            cur[i] = prev[i] + half * (g0[i] + g1[i]);
        }
    }

    SpaceField psi0 = lift_initial_velocity(data.z1);
    WaveData lifted{std::move(G), psi0, data.z0, nullptr};
    WaveSolution psi = solve_weak(problem, lifted);
    SpaceTimeField z = psi.v;
    return VeryWeakSolution{std::move(z), std::move(psi), std::move(psi0)};
}

double initial_velocity_defect(const VeryWeakSolution& solution, const VeryWeakData& data) {
    const auto a0 = solution.psi.a.level(0);
    const DualElement zt0 = DualElement::from_l2(
        SpaceField(solution.z.grid_ptr(), std::vector<double>(a0.begin(), a0.end())));
    const SpaceField d = representative_difference(zt0, data.z1);
    return std::sqrt(weighted_form(d, d));
}

TimeSeries very_weak_trace(const VeryWeakSolution& solution) {
    const auto& tau = solution.psi.trace;
    const std::size_t n = tau.values.size();
    TimeSeries out{tau.times, std::vector<double>(n, 0.0)};
    if (n < 3) {
        throw ArgumentError("trace differentiation needs at least three time levels");
    }
    const auto& t = tau.times;
    const auto& y = tau.values;
    for (std::size_t k = 1; k + 1 < n; ++k) {
        out.values[k] = (y[k + 1] - y[k - 1]) / (t[k + 1] - t[k - 1]);
    }
    const double h0 = t[1] - t[0];
    const double hn = t[n - 1] - t[n - 2];
    out.values[0] = (-3.0 * y[0] + 4.0 * y[1] - y[2]) / (2.0 * h0);
    out.values[n - 1] = (3.0 * y[n - 1] - 4.0 * y[n - 2] + y[n - 3]) / (2.0 * hn);
    return out;
}

double transposition_well_posedness_ratio(const VeryWeakSolution& solution, const VeryWeakData& data,
                                          std::size_t stride) {
    if (stride == 0) {
        throw ArgumentError("stride must be positive");
    }
    const Grid& grid = solution.grid();
    const std::size_t levels = solution.z.levels();
    double sup = 0.0;
    for (std::size_t k = 0; k < levels; k = (k + 1 == levels) ? levels : std::min(k + stride, levels - 1)) {
        const auto z = solution.z.level(k);
        const auto a = solution.psi.a.level(k);
        const double zt = h_minus1_norm(
            DualElement::from_l2(SpaceField(solution.z.grid_ptr(), std::vector<double>(a.begin(), a.end()))));
        sup = std::max(sup, integrate_square(grid, z, 0.0, 1.0) + zt * zt);
    }
    const double g = l1_l2_norm(data.g);
    const double z1 = h_minus1_norm(data.z1);
    const double z0 = l2_norm(data.z0);
    const double den = g * g + z1 * z1 + z0 * z0;
    if (den == 0.0) {
        return sup == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    return sup / den;
}

double SpaceTimeBump::operator()(double t, double x) const {
    auto bump = [](double s) { return std::abs(s) < 1.0 ? std::exp(-1.0 / (1.0 - s * s)) : 0.0; };
    return amplitude * bump((t - t_center) / t_radius) * bump((x - x_center) / x_radius);
}

void SpaceTimeBump::require_inside(double T) const {
    if (!(t_radius > 0.0 && x_radius > 0.0 && t_center - t_radius > 0.0 && t_center + t_radius < T &&
          x_center - x_radius > 0.0 && x_center + x_radius < 1.0)) {
        std::ostringstream msg;
        msg << "bump support [" << t_center - t_radius << ", " << t_center + t_radius << "] x ["
            << x_center - x_radius << ", " << x_center + x_radius << "] is not compactly inside (0, " << T
            << ") x (0, 1)";
        throw ArgumentError(msg.str());
    }
}

double DualityTerms::residual() const {
    const double l = lhs;
    const double r = rhs();
    const double scale = std::max(std::abs(l), std::abs(r));
    return scale == 0.0 ? 0.0 : std::abs(l - r) / scale;
}

double DualityTerms::residual_with_flipped_pairing() const {
    DualityTerms flipped = *this;
    flipped.velocity_pairing = -velocity_pairing;
    return flipped.residual();
}

AdjointSolution solve_adjoint(const WaveProblem& problem, const SpaceTimeBump& F) {
    F.require_inside(problem.T);
    const double T = problem.T;
    // theta(t) = theta~(T - t) where theta~ starts from rest under F(T - tau).
    const WaveData reversed = WaveData::from_functions(
        problem, [F, T](double tau, double x) { return F(T - tau, x); }, [](double) { return 0.0; },
        [](double) { return 0.0; });
    const WaveSolution back = solve_weak(problem, reversed);
    const auto times = problem.times();
    AdjointSolution adj{SpaceTimeField(problem.grid, times), SpaceTimeField(problem.grid, times)};
    const std::size_t nt = problem.nt;
    for (std::size_t k = 0; k <= nt; ++k) {
        const auto u = back.u.level(nt - k);
        const auto v = back.v.level(nt - k);
        auto th = adj.theta.level(k);
        auto tht = adj.theta_t.level(k);
        for (std::size_t i = 0; i < th.size(); ++i) {
            th[i] = u[i];
            tht[i] = -v[i];
        }
    }
    return adj;
}

DualityTerms duality_terms(const VeryWeakSolution& solution, const VeryWeakData& data, const SpaceTimeBump& F,
                           const WaveProblem& problem) {
    require_problem_axis(solution.z, problem, "very weak solution");
    require_problem_axis(data.g, problem, "very weak source g");
    const AdjointSolution adj = solve_adjoint(problem, F);
    const Grid& grid = *problem.grid;
    const TridiagonalMatrix mass = assemble_full_mass(grid, MassKind::Consistent);
    const auto times = problem.times();

    std::vector<double> zf(times.size());
    std::vector<double> gth(times.size());
    for (std::size_t k = 0; k < times.size(); ++k) {
        const auto load = assemble_load(grid, [&F](double t, double x) { return F(t, x); }, times[k]);
        zf[k] = dot(load, solution.z.level(k));
        gth[k] = mass_product(mass, data.g.level(k), adj.theta.level(k));
    }

    DualityTerms terms;
    terms.lhs = trapezoid(times, zf);
    terms.source = trapezoid(times, gth);
    terms.initial_displacement = -mass_product(mass, data.z0.values(), adj.theta_t.level(0));
    const SpaceField theta0 = adj.theta.slice(0, BoundaryTags::h1_alpha(grid.regime()));
    terms.velocity_pairing = -weighted_form(solution.psi0, theta0);
    return terms;
}

double duality_residual(const VeryWeakSolution& solution, const VeryWeakData& data, const SpaceTimeBump& F,
                        const WaveProblem& problem) {
    return duality_terms(solution, data, F, problem).residual();
}

std::string_view to_string(DualityDatum datum) {
    switch (datum) {
    case DualityDatum::Zero:
        return "zero";
    case DualityDatum::Regular:
        return "regular";
    case DualityDatum::SmoothDual:
        return "smooth-dual";
    case DualityDatum::PointMass:
        return "point-mass";
    case DualityDatum::Forced:
        return "forced";
    }
    return "unknown";
}

DualityDatum duality_datum_from_string(std::string_view name) {
    for (auto d : {DualityDatum::Zero, DualityDatum::Regular, DualityDatum::SmoothDual, DualityDatum::PointMass,
                   DualityDatum::Forced}) {
        if (name == to_string(d)) {
            return d;
        }
    }
    throw ConfigError("unknown duality datum '" + std::string(name) + "'");
}

VeryWeakData make_duality_datum(DualityDatum datum, const WaveProblem& problem) {
    VeryWeakData data = VeryWeakData::zero(problem);
    const GridPtr& grid = problem.grid;
    switch (datum) {
    case DualityDatum::Zero:
        break;
    case DualityDatum::Regular:
        data.z0 = SpaceField::interpolate(grid, [](double x) { return x - x * x; });
        break;
    case DualityDatum::SmoothDual:
        data.z1 = DualElement::from_l2(SpaceField::interpolate(grid, [](double x) { return 1.0 - 4.0 * x; }));
        break;
    case DualityDatum::PointMass: {
        // a(r, phi) = phi(1/2) for every admissible phi.
        const StiffnessOperator op(grid);
        std::vector<double> rhs(op.unknowns(), 0.0);
        const std::size_t c = grid->locate(0.5);
        const double lam = (0.5 - grid->node(c)) / grid->width(c);
        for (std::size_t node : {c, c + 1}) {
            if (node >= op.first_free() && node <= op.last_free()) {
                rhs[node - op.first_free()] += node == c ? 1.0 - lam : lam;
            }
        }
        const auto r = op.solve(rhs);
        std::vector<double> full(grid->size(), 0.0);
        std::copy(r.begin(), r.end(), full.begin() + static_cast<std::ptrdiff_t>(op.first_free()));
        data.z1 = DualElement::from_representative(
            SpaceField(grid, std::move(full), BoundaryTags::h1_alpha(grid->regime())));
        break;
    }
    case DualityDatum::Forced:
        data.g = SpaceTimeField::sample(grid, problem.times(),
                                        [](double t, double x) { return std::cos(t) * std::sin(std::numbers::pi * x); });
        break;
    }
    return data;
}

std::vector<SpaceTimeBump> bump_catalog(double T) {
    return {
        SpaceTimeBump{0.5 * T, 0.25 * T, 0.5, 0.3, 1.0},
        SpaceTimeBump{0.4 * T, 0.3 * T, 0.35, 0.25, 2.0},
    };
}

// ---------------------------------------------------------------------------

std::string_view to_string(LiminfEstimator estimator) {
    return estimator == LiminfEstimator::TailMinimum ? "tail-min" : "richardson";
}

LiminfEstimator liminf_estimator_from_string(std::string_view name) {
    if (name == "tail-min") {
        return LiminfEstimator::TailMinimum;
    }
    if (name == "richardson") {
        return LiminfEstimator::Richardson;
    }
    throw ConfigError("unknown liminf estimator '" + std::string(name) + "'");
}

WaveProblem LiminfSettings::problem() const {
    WaveProblem p;
    p.grid = Grid::uniform(cells, Degeneracy(alpha));
    p.T = T;
    p.nt = static_cast<std::size_t>(std::ceil(steps_per_unit * T - 1e-9));
    return p;
}

namespace {

VeryWeakData mms_data(const WaveProblem& problem, double perturbation) {
    const auto sol = closed_form(CatalogEntry::WdcPolynomial, problem.grid->alpha());
    const GridPtr& grid = problem.grid;
    const double e = perturbation;
    SpaceTimeField h(grid, problem.times());
    for (std::size_t k = 0; k < h.levels(); ++k) {
        const double t = h.times()[k];
        const auto vals = sample_nodes(*grid, [&](double x) { return sol.f(t, x); });
        std::copy(vals.begin(), vals.end(), h.level(k).begin());
    }
    SpaceField z0 = SpaceField::interpolate(grid, [&](double x) {
        return sol.u(0.0, x) + e * std::sin(std::numbers::pi * x);
    });
    DualElement z1 = DualElement::from_l2(SpaceField::interpolate(grid, [&](double x) {
        return sol.u_t(0.0, x) + e * (1.0 - x);
    }));
    return VeryWeakData{std::move(h), std::move(z0), std::move(z1)};
}

// Pairings of the data difference against sin(j pi x) cos(j pi t / T), j = 1..10.
double weak_defect(const VeryWeakData& a, const VeryWeakData& b, const WaveProblem& problem) {
    const GridPtr& grid = problem.grid;
    const TridiagonalMatrix mass = assemble_full_mass(*grid, MassKind::Consistent);
    const auto times = problem.times();
    double worst = 0.0;
    for (int j = 1; j <= 10; ++j) {
        const SpaceField zeta = SpaceField::interpolate(
            grid, [j](double x) { return std::sin(j * std::numbers::pi * x); },
            BoundaryTags::h1_alpha(grid->regime()));
        std::vector<double> per_level(times.size());
        for (std::size_t k = 0; k < times.size(); ++k) {
            const auto ha = a.g.level(k);
            const auto hb = b.g.level(k);
            std::vector<double> d(ha.size());
            for (std::size_t i = 0; i < d.size(); ++i) {
                d[i] = ha[i] - hb[i];
            }
            per_level[k] = std::cos(j * std::numbers::pi * times[k] / problem.T) * mass_product(mass, d, zeta.values());
        }
        const double ph = trapezoid(times, per_level);
        std::vector<double> dz0(a.z0.values().size());
        for (std::size_t i = 0; i < dz0.size(); ++i) {
            dz0[i] = a.z0[i] - b.z0[i];
        }
        const double p0 = mass_product(mass, dz0, zeta.values());
        const double p1 = a.z1.pair(zeta) - b.z1.pair(zeta);
        worst = std::max(worst, std::abs(ph) + std::abs(p0) + std::abs(p1));
    }
    return worst;
}

double growth_exponent(const std::vector<double>& eps, const std::vector<double>& theta) {
    // Least-squares slope of log(theta) against log(1/eps); 0 for vanishing data.
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < eps.size(); ++i) {
        if (theta[i] > 0.0) {
            pts.emplace_back(-std::log(eps[i]), std::log(theta[i]));
        }
    }
    if (pts.size() < 2) {
        return 0.0;
    }
    double mx = 0.0, my = 0.0;
    for (auto [x, y] : pts) {
        mx += x;
        my += y;
    }
    mx /= static_cast<double>(pts.size());
    my /= static_cast<double>(pts.size());
    double sxx = 0.0, sxy = 0.0;
    for (auto [x, y] : pts) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    return sxx > 0.0 ? sxy / sxx : 0.0;
}

} // namespace

ConvergentFamily make_family(std::string_view name, const LiminfSettings& settings) {
    const WaveProblem problem = settings.problem();
    ConvergentFamily fam;
    fam.name = std::string(name);
    fam.problem = problem;
    if (name == "zero") {
        for (double e : settings.epsilons) {
            fam.members.push_back({e, VeryWeakData::zero(problem)});
        }
        fam.limit = VeryWeakData::zero(problem);
    } else if (name == "constant-mms") {
        for (double e : settings.epsilons) {
            fam.members.push_back({e, mms_data(problem, 0.0)});
        }
        fam.limit = mms_data(problem, 0.0);
    } else if (name == "decaying-mms") {
        for (double e : settings.epsilons) {
            fam.members.push_back({e, mms_data(problem, e)});
        }
        fam.limit = mms_data(problem, 0.0);
    } else if (name == "w-field") {
        // (1 - x) u(t) with u = 1; its x-derivative at 1 is -1 on every cell.
        fam.synthetic_field = SpaceTimeField::sample(problem.grid, problem.times(),
                                                     [](double, double x) { return 1.0 - x; });
        const Grid& grid = *problem.grid;
        const std::size_t last = grid.cells() - 1;
        TimeSeries trace{problem.times(), {}};
        for (std::size_t k = 0; k < fam.synthetic_field->levels(); ++k) {
            const auto w = fam.synthetic_field->level(k);
            trace.values.push_back((w[last + 1] - w[last]) / grid.width(last));
        }
        fam.synthetic_trace = std::move(trace);
        for (double e : settings.epsilons) {
            fam.members.push_back({e, VeryWeakData::zero(problem)});
        }
    } else {
        throw ConfigError("unknown family '" + std::string(name) +
                          "' (expected zero, constant-mms, decaying-mms or w-field)");
    }
    return fam;
}

LiminfReport liminf_experiment(const ConvergentFamily& family, const LiminfSettings& settings) {
    if (family.members.empty()) {
        throw ConfigError("liminf family '" + family.name + "' has no members");
    }
    for (std::size_t i = 1; i < family.members.size(); ++i) {
        if (!(family.members[i].epsilon < family.members[i - 1].epsilon)) {
            throw ConfigError("liminf eps grid must be strictly decreasing");
        }
    }
    const WaveProblem& problem = family.problem;
    LiminfReport rep;
    rep.family = family.name;
    rep.estimator = settings.estimator;

    for (const auto& m : family.members) {
        rep.epsilons.push_back(m.epsilon);
        if (family.synthetic_field) {
            rep.theta.push_back(theta_functional(*family.synthetic_field, m.epsilon));
            rep.weak_defect.push_back(0.0);
            continue;
        }
        const VeryWeakSolution sol = solve_very_weak(m.data, problem);
        rep.theta.push_back(theta_functional(sol.z, m.epsilon));
        rep.weak_defect.push_back(family.limit ? weak_defect(m.data, *family.limit, problem) : 0.0);
    }

    rep.growth_exponent = growth_exponent(rep.epsilons, rep.theta);
    rep.hypothesis_holds = rep.growth_exponent <= settings.growth_limit;
    for (double t : rep.theta) {
        rep.hypothesis_holds = rep.hypothesis_holds && std::isfinite(t);
    }

    const std::size_t n = rep.theta.size();
    const std::size_t tail = (n + 1) / 2;
    rep.tail_minimum = *std::min_element(rep.theta.end() - static_cast<std::ptrdiff_t>(tail), rep.theta.end());
    if (n == 1) {
        rep.richardson = rep.theta.front();
    } else {
        std::vector<double> r;
        for (std::size_t k = 0; k + 1 < n; ++k) {
            const double e0 = rep.epsilons[k], e1 = rep.epsilons[k + 1];
            r.push_back((e0 * rep.theta[k + 1] - e1 * rep.theta[k]) / (e0 - e1));
        }
        const std::size_t rt = (r.size() + 1) / 2;
        rep.richardson = *std::min_element(r.end() - static_cast<std::ptrdiff_t>(rt), r.end());
    }
    rep.liminf_estimate = settings.estimator == LiminfEstimator::TailMinimum ? rep.tail_minimum : rep.richardson;

    if (family.synthetic_trace) {
        rep.trace_l2_squared = family.synthetic_trace->l2_squared();
    } else if (family.limit) {
        rep.trace_l2_squared = very_weak_trace(solve_very_weak(*family.limit, problem)).l2_squared();
    }
    const double third = rep.trace_l2_squared / 3.0;
    rep.slack_tail_minimum = rep.tail_minimum - third;
    rep.slack_richardson = rep.richardson - third;
    rep.slack = rep.hypothesis_holds ? rep.liminf_estimate - third : std::numeric_limits<double>::quiet_NaN();
    return rep;
}

} // namespace degwave
