#include "degwave/elliptic.hpp"

#include "degwave/errors.hpp"

#include <cmath>

namespace degwave {

TridiagonalMatrix assemble_full_stiffness(const Grid& grid) {
    TridiagonalMatrix k(grid.size());
    for (std::size_t c = 0; c < grid.cells(); ++c) {
        const double h = grid.width(c);
        const double s = grid.cell_weights()[c] / (h * h);
        k.diag[c] += s;
        k.diag[c + 1] += s;
        k.upper[c] -= s;
        k.lower[c] -= s;
    }
    return k;
}

TridiagonalMatrix assemble_full_mass(const Grid& grid, MassKind kind) {
    TridiagonalMatrix m(grid.size());
    for (std::size_t c = 0; c < grid.cells(); ++c) {
        const double h = grid.width(c);
        if (kind == MassKind::Consistent) {
            m.diag[c] += h / 3.0;
            m.diag[c + 1] += h / 3.0;
            m.upper[c] += h / 6.0;
            m.lower[c] += h / 6.0;
        } else {
            m.diag[c] += h / 2.0;
            m.diag[c + 1] += h / 2.0;
        }
    }
    return m;
}

double weighted_form(const SpaceField& u, const SpaceField& v) {
    if (u.grid_ptr() != v.grid_ptr()) {
        throw ArgumentError("weighted_form requires a shared grid");
    }
    const Grid& grid = u.grid();
    double acc = 0.0;
    for (std::size_t c = 0; c < grid.cells(); ++c) {
        acc += grid.cell_weights()[c] * u.slope(c) * v.slope(c);
    }
    return acc;
}

StiffnessOperator::StiffnessOperator(GridPtr grid) : grid_(std::move(grid)) {
    if (grid_->cells() < 2) {
        throw DomainError("stiffness operator needs at least two cells");
    }
    full_ = assemble_full_stiffness(*grid_);
    reduced_ = full_.block(first_free(), last_free());
    factor_ = ThomasSolver(reduced_);
}

std::vector<double> StiffnessOperator::solve(std::span<const double> rhs_free) const {
    return factor_.solve(rhs_free);
}

StiffnessOperator assemble_stiffness(GridPtr grid) {
    return StiffnessOperator(std::move(grid));
}

namespace {

SpaceField expand_free(const GridPtr& grid, std::size_t first, std::span<const double> free) {
    std::vector<double> values(grid->size(), 0.0);
    for (std::size_t i = 0; i < free.size(); ++i) {
        values[first + i] = free[i];
    }
    return SpaceField(grid, std::move(values), BoundaryTags::h1_alpha(grid->regime()));
}

// Solves a(r, phi) = scale * (g, phi) over the admissible phi.
SpaceField riesz_solve(const StiffnessOperator& op, const SpaceField& g, double scale) {
    const Grid& grid = op.grid();
    const auto mass = assemble_full_mass(grid);
    const auto mg = mass.apply(g.values());
    std::vector<double> rhs(op.unknowns());
    for (std::size_t i = 0; i < rhs.size(); ++i) {
        rhs[i] = scale * mg[op.first_free() + i];
    }
    const auto sol = op.solve(rhs);
    return expand_free(op.grid_ptr(), op.first_free(), sol);
}

} // namespace

SpaceField solve_degenerate_poisson(const StiffnessOperator& op, const SpaceField& g) {
    if (g.grid_ptr() != op.grid_ptr()) {
        throw ArgumentError("solve_degenerate_poisson: load lives on a different grid");
    }
    return riesz_solve(op, g, -1.0);
}

SpaceField solve_degenerate_poisson(const SpaceField& g) {
    return solve_degenerate_poisson(StiffnessOperator(g.grid_ptr()), g);
}

DualElement::DualElement(std::optional<SpaceField> l2, SpaceField representative)
    : l2_(std::move(l2)), representative_(std::move(representative)) {}

DualElement DualElement::from_l2(SpaceField z) {
    StiffnessOperator op(z.grid_ptr());
    SpaceField rep = riesz_solve(op, z, 1.0);
    return DualElement(std::move(z), std::move(rep));
}

DualElement DualElement::from_representative(SpaceField representative) {
    if (!representative.satisfies_tags()) {
        throw ArgumentError("Riesz representative must satisfy its H^1_alpha constraints");
    }
    return DualElement(std::nullopt, std::move(representative));
}

const SpaceField& DualElement::l2() const {
    if (!l2_) {
        throw ArgumentError("dual element carries no L^2 representation");
    }
    return *l2_;
}

double DualElement::pair(const SpaceField& v) const {
    return weighted_form(representative_, v);
}

double h_minus1_norm(const DualElement& z) {
    return std::sqrt(weighted_form(z.representative(), z.representative()));
}

} // namespace degwave
