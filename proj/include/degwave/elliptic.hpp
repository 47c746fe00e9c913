#pragma once

// Degenerate elliptic problem (x^alpha v_x)_x = g with the regime's boundary
// conditions, and the H^{-1}_alpha norm through Riesz representatives.

#include "degwave/linalg.hpp"
#include "degwave/spaces.hpp"

#include <optional>

namespace degwave {

enum class MassKind { Consistent, Lumped };

/// Stiffness of a(u, v) = \int x^alpha u_x v_x on every node, natural conditions
/// at both ends. Entries only use the exact cell weights.
TridiagonalMatrix assemble_full_stiffness(const Grid& grid);
/// P1 mass matrix on every node.
TridiagonalMatrix assemble_full_mass(const Grid& grid, MassKind kind = MassKind::Consistent);

/// a(u, v) for two P1 fields on the same grid.
double weighted_form(const SpaceField& u, const SpaceField& v);

/// Stiffness restricted to the H^1_alpha unknowns: nodes 1..N-1 in WDC,
/// 0..N-1 in SDC (weighted Neumann condition at x = 0 imposed weakly).
class StiffnessOperator {
public:
    explicit StiffnessOperator(GridPtr grid);

    const Grid& grid() const noexcept { return *grid_; }
    const GridPtr& grid_ptr() const noexcept { return grid_; }
    std::size_t first_free() const noexcept { return grid_->first_free(); }
    std::size_t last_free() const noexcept { return grid_->last_free(); }
    std::size_t unknowns() const noexcept { return reduced_.size(); }

    const TridiagonalMatrix& full() const noexcept { return full_; }
    const TridiagonalMatrix& reduced() const noexcept { return reduced_; }

    /// Solves reduced() x = rhs (rhs indexed over the free nodes).
    std::vector<double> solve(std::span<const double> rhs_free) const;

private:
    GridPtr grid_;
    TridiagonalMatrix full_;
    TridiagonalMatrix reduced_;
    ThomasSolver factor_;
};

StiffnessOperator assemble_stiffness(GridPtr grid);

/// Solves \int x^alpha v_x phi_x = -\int g phi for every admissible phi, i.e. the
/// weak form of (x^alpha v_x)_x = g, with g represented by its P1 interpolant.
SpaceField solve_degenerate_poisson(const SpaceField& g);
SpaceField solve_degenerate_poisson(const StiffnessOperator& op, const SpaceField& g);

/// Element of H^{-1}_alpha, held as an L^2 field and/or its Riesz representative
/// r, normalised so that <z, v> = \int x^alpha r_x v_x for all v in H^1_alpha.
class DualElement {
public:
    static DualElement from_l2(SpaceField z);
    static DualElement from_representative(SpaceField representative);

    bool has_l2() const noexcept { return l2_.has_value(); }
    const SpaceField& l2() const;
    const SpaceField& representative() const noexcept { return representative_; }
    const Grid& grid() const noexcept { return representative_.grid(); }

    /// Duality pairing <z, v>.
    double pair(const SpaceField& v) const;

private:
    DualElement(std::optional<SpaceField> l2, SpaceField representative);

    std::optional<SpaceField> l2_;
    SpaceField representative_;
};

/// ||z||_{H^{-1}_alpha} = (\int x^alpha r_x^2)^{1/2}.
double h_minus1_norm(const DualElement& z);

} // namespace degwave
