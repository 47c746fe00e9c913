#include "degwave/wave.hpp"

#include "degwave/errors.hpp"
#include "degwave/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace degwave {

std::string_view to_string(Scheme scheme) {
    return scheme == Scheme::NewmarkAvgAccel ? "newmark" : "leapfrog";
}

Scheme scheme_from_string(std::string_view name) {
    if (name == "newmark" || name == "NewmarkAvgAccel") {
        return Scheme::NewmarkAvgAccel;
    }
    if (name == "leapfrog" || name == "Leapfrog") {
        return Scheme::Leapfrog;
    }
    throw ConfigError("unknown time scheme '" + std::string(name) + "'");
}

std::vector<double> WaveProblem::times() const {
    std::vector<double> t(nt + 1);
    for (std::size_t k = 0; k <= nt; ++k) {
        t[k] = T * static_cast<double>(k) / static_cast<double>(nt);
    }
    t.back() = T;
    return t;
}

void WaveProblem::validate() const {
    if (!grid) {
        throw ConfigError("wave problem has no grid");
    }
    if (!(T > 0.0) || nt == 0) {
        throw ConfigError("wave problem needs T > 0 and at least one time step");
    }
    if (scheme == Scheme::Leapfrog) {
        const double limit = cfl * grid->h_min() / (mass == MassKind::Lumped ? 1.0 : std::sqrt(3.0));
        if (dt() > limit) {
            std::ostringstream msg;
            msg << "leapfrog CFL violation: dt = " << dt() << " exceeds " << limit
                << " (cfl " << cfl << ", h_min " << grid->h_min() << ")";
            throw ConfigError(msg.str());
        }
    }
}

std::vector<double> sample_nodes(const Grid& grid, const std::function<double(double)>& fn) {
    std::vector<double> out(grid.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = fn(grid.node(i));
    }
    if (!std::isfinite(out[0])) {
        out[0] = quad::integrate<quad::Gauss5>(0.0, grid.node(1), fn) / grid.node(1);
    }
    return out;
}

WaveData WaveData::zero(const WaveProblem& problem) {
    const BoundaryTags h1 = BoundaryTags::h1_alpha(problem.grid->regime());
    return WaveData{SpaceTimeField(problem.grid, problem.times()), SpaceField::zeros(problem.grid, h1),
                    SpaceField::zeros(problem.grid), nullptr};
}

WaveData WaveData::from_functions(const WaveProblem& problem, SourceFn f,
                                  const std::function<double(double)>& u0,
                                  const std::function<double(double)>& u1) {
    const GridPtr& grid = problem.grid;
    SpaceTimeField fs(grid, problem.times());
    for (std::size_t k = 0; k < fs.levels(); ++k) {
        const double t = fs.times()[k];
        const auto vals = sample_nodes(*grid, [&](double x) { return f(t, x); });
        std::copy(vals.begin(), vals.end(), fs.level(k).begin());
    }
    const BoundaryTags h1 = BoundaryTags::h1_alpha(grid->regime());
    return WaveData{std::move(fs), SpaceField::interpolate(grid, u0, h1), SpaceField::interpolate(grid, u1),
                    std::move(f)};
}

std::vector<double> assemble_load(const Grid& grid, const SourceFn& f, double t) {
    std::vector<double> load(grid.size(), 0.0);
    auto add_piece = [&](std::size_t c, double lo, double hi) {
        const double x0 = grid.node(c);
        const double h = grid.width(c);
        const double mid = 0.5 * (lo + hi);
        const double half = 0.5 * (hi - lo);
        for (std::size_t q = 0; q < quad::Gauss5::nodes.size(); ++q) {
            const double x = mid + half * quad::Gauss5::nodes[q];
            const double w = half * quad::Gauss5::weights[q];
            const double fx = f(t, x);
            const double lam = (x - x0) / h;
            load[c] += w * fx * (1.0 - lam);
            load[c + 1] += w * fx * lam;
        }
    };
    // Sources may carry x^{alpha-1}: the first cell is split geometrically
    // toward 0, the next few uniformly.
    constexpr int geometric_levels = 24;
    constexpr double ratio = 0.25;
    constexpr std::size_t near_cells = 8;
    constexpr int near_splits = 4;
    for (std::size_t c = 0; c < grid.cells(); ++c) {
        const double x0 = grid.node(c);
        const double x1 = grid.node(c + 1);
        if (c == 0) {
            double hi = x1;
            for (int j = 0; j < geometric_levels; ++j) {
                const double lo = hi * ratio;
                add_piece(c, lo, hi);
                hi = lo;
            }
            add_piece(c, 0.0, hi);
        } else if (c < near_cells) {
            const double step = (x1 - x0) / near_splits;
            for (int j = 0; j < near_splits; ++j) {
                add_piece(c, x0 + j * step, j + 1 == near_splits ? x1 : x0 + (j + 1) * step);
            }
        } else {
            add_piece(c, x0, x1);
        }
    }
    return load;
}

double energy(const Grid& grid, std::span<const double> u, std::span<const double> v) {
    double kinetic = integrate_square(grid, v, 0.0, 1.0);
    double potential = 0.0;
    for (std::size_t c = 0; c < grid.cells(); ++c) {
        const double s = (u[c + 1] - u[c]) / grid.width(c);
        potential += grid.cell_weights()[c] * s * s;
    }
    return 0.5 * (kinetic + potential);
}

double energy(const WaveSolution& solution, std::size_t k) {
    if (k >= solution.levels()) {
        throw ArgumentError("energy: time index out of range");
    }
    return energy(solution.grid(), solution.u.level(k), solution.v.level(k));
}

TraceResult boundary_trace(const WaveSolution& solution) {
    return TraceResult{solution.trace, solution.trace.l2_squared()};
}

namespace {

// Time integration on the free nodes [lo, hi]; constrained values stay zero.
class SemiDiscreteSystem {
public:
    SemiDiscreteSystem(const WaveProblem& problem, const WaveData& data)
        : data_(data), grid_(*problem.grid),
          stiffness_(assemble_full_stiffness(grid_)),
          mass_(assemble_full_mass(grid_, problem.mass)), load_mass_(assemble_full_mass(grid_)),
          lo_(grid_.first_free()), hi_(grid_.last_free()),
          mass_free_(mass_.block(lo_, hi_)), stiffness_free_(stiffness_.block(lo_, hi_)),
          mass_solver_(mass_free_) {}

    // Load on every node at level k.
    std::vector<double> load(std::size_t k) const {
        if (data_.f_exact) {
            return assemble_load(grid_, data_.f_exact, data_.f.times()[k]);
        }
        return load_mass_.apply(data_.f.level(k));
    }

    std::vector<double> restrict_free(std::span<const double> full) const {
        return std::vector<double>(full.begin() + static_cast<std::ptrdiff_t>(lo_),
                                   full.begin() + static_cast<std::ptrdiff_t>(hi_ + 1));
    }

    void write_free(std::span<double> full, std::span<const double> free) const {
        std::fill(full.begin(), full.end(), 0.0);
        std::copy(free.begin(), free.end(), full.begin() + static_cast<std::ptrdiff_t>(lo_));
    }

    // M^{-1}(F - K u) on the free nodes.
    std::vector<double> acceleration(std::span<const double> load_full, std::span<const double> u_free) const {
        auto rhs = restrict_free(load_full);
        const auto ku = stiffness_free_.apply(u_free);
        for (std::size_t i = 0; i < rhs.size(); ++i) {
            rhs[i] -= ku[i];
        }
        return mass_solver_.solve(rhs);
    }

    // (x^alpha u_x)(t, 1) = (M a + K u - F)_N.
    double flux(std::span<const double> a, std::span<const double> u, std::span<const double> load_full) const {
        const std::size_t n = grid_.cells();
        return mass_.apply_row(n, a) + stiffness_.apply_row(n, u) - load_full[n];
    }

    const TridiagonalMatrix& mass_free() const { return mass_free_; }
    const TridiagonalMatrix& stiffness_free() const { return stiffness_free_; }

private:
    const WaveData& data_;
    const Grid& grid_;
    TridiagonalMatrix stiffness_;
    TridiagonalMatrix mass_;
    TridiagonalMatrix load_mass_;
    std::size_t lo_;
    std::size_t hi_;
    TridiagonalMatrix mass_free_;
    TridiagonalMatrix stiffness_free_;
    ThomasSolver mass_solver_;
};

void check_data(const WaveProblem& problem, const WaveData& data) {
    if (data.f.grid_ptr() != problem.grid || data.u0.grid_ptr() != problem.grid ||
        data.u1.grid_ptr() != problem.grid) {
        throw ArgumentError("wave data must live on the problem grid");
    }
    if (data.f.levels() != problem.nt + 1) {
        throw ArgumentError("source must be stored at every time level");
    }
    const Grid& grid = *problem.grid;
    double peak = 0.0;
    for (double x : data.u0.values()) {
        peak = std::max(peak, std::abs(x));
    }
    const double scale = 1e-12 * (1.0 + peak);
    if (std::abs(data.u0.values().back()) > scale ||
        (grid.degeneracy().pins_left() && std::abs(data.u0.values().front()) > scale)) {
        throw ArgumentError("initial displacement violates the regime boundary conditions");
    }
}

} // namespace

WaveSolution solve_weak(const WaveProblem& problem, const WaveData& data) {
    problem.validate();
    check_data(problem, data);

    const Grid& grid = *problem.grid;
    const auto times = problem.times();
    const double dt = problem.dt();
    SemiDiscreteSystem sys(problem, data);

    WaveSolution sol{SpaceTimeField(problem.grid, times), SpaceTimeField(problem.grid, times),
                     SpaceTimeField(problem.grid, times), TimeSeries{times, std::vector<double>(times.size())},
                     TimeSeries{times, std::vector<double>(times.size())}};

    auto u = sys.restrict_free(data.u0.values());
    auto v = sys.restrict_free(data.u1.values());
    auto load = sys.load(0);
    auto a = sys.acceleration(load, u);

    auto record = [&](std::size_t k, const std::vector<double>& load_k) {
        sys.write_free(sol.u.level(k), u);
        sys.write_free(sol.v.level(k), v);
        sys.write_free(sol.a.level(k), a);
        sol.energy.values[k] = energy(grid, sol.u.level(k), sol.v.level(k));
        sol.trace.values[k] = sys.flux(sol.a.level(k), sol.u.level(k), load_k);
    };
    record(0, load);

    const std::size_t n = u.size();
    if (problem.scheme == Scheme::NewmarkAvgAccel) {
        constexpr double beta = 0.25;
        constexpr double gamma = 0.5;
        const ThomasSolver effective(sys.mass_free().combine(1.0, sys.stiffness_free(), beta * dt * dt));
        std::vector<double> predictor(n);
        for (std::size_t k = 1; k <= problem.nt; ++k) {
            load = sys.load(k);
            for (std::size_t i = 0; i < n; ++i) {
                predictor[i] = u[i] + dt * v[i] + (0.5 - beta) * dt * dt * a[i];
            }
            auto rhs = sys.restrict_free(load);
            const auto kp = sys.stiffness_free().apply(predictor);
            for (std::size_t i = 0; i < n; ++i) {
                rhs[i] -= kp[i];
            }
            const auto a_next = effective.solve(rhs);
            for (std::size_t i = 0; i < n; ++i) {
                u[i] = predictor[i] + beta * dt * dt * a_next[i];
                v[i] += dt * ((1.0 - gamma) * a[i] + gamma * a_next[i]);
            }
            a = a_next;
            record(k, load);
        }
    } else {
        // Central differences; velocity reported as (u^k - u^{k-1})/dt + dt/2 a^k.
        std::vector<double> u_prev = u;
        for (std::size_t i = 0; i < n; ++i) {
            u[i] = u_prev[i] + dt * v[i] + 0.5 * dt * dt * a[i];
        }
        for (std::size_t k = 1; k <= problem.nt; ++k) {
            load = sys.load(k);
            a = sys.acceleration(load, u);
            for (std::size_t i = 0; i < n; ++i) {
                v[i] = (u[i] - u_prev[i]) / dt + 0.5 * dt * a[i];
            }
            record(k, load);
            if (k == problem.nt) {
                break;
            }
            for (std::size_t i = 0; i < n; ++i) {
                const double next = 2.0 * u[i] - u_prev[i] + dt * dt * a[i];
                u_prev[i] = u[i];
                u[i] = next;
            }
        }
    }
    return sol;
}

double l2_distance(const Grid& grid, std::span<const double> values, const std::function<double(double)>& fn) {
    double acc = 0.0;
    for (std::size_t c = 0; c < grid.cells(); ++c) {
        const double x0 = grid.node(c);
        const double h = grid.width(c);
        acc += quad::integrate<quad::Gauss5>(x0, x0 + h, [&](double x) {
            const double uh = values[c] + (values[c + 1] - values[c]) * (x - x0) / h;
            const double d = uh - fn(x);
            return d * d;
        });
    }
    return std::sqrt(acc);
}

} // namespace degwave
