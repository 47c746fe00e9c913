#pragma once

// Meshes on [0, 1], P1 nodal fields and the x^alpha-weighted norms everything
// else is measured with.

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

namespace degwave {

enum class Regime { WDC, SDC };

std::string_view to_string(Regime regime);

/// Degeneracy exponent alpha in (0, 2) together with its regime:
/// WDC for alpha in (0, 1), SDC for alpha in [1, 2).
class Degeneracy {
public:
    explicit Degeneracy(double alpha);

    double alpha() const noexcept { return alpha_; }
    Regime regime() const noexcept { return regime_; }
    /// WDC fields carry a Dirichlet condition at x = 0; SDC fields do not.
    bool pins_left() const noexcept { return regime_ == Regime::WDC; }

private:
    double alpha_;
    Regime regime_;
};

/// Exact integral of x^alpha over [x_lo, x_hi] (subset of [0, 1]).
double cell_weight_integral(double x_lo, double x_hi, double alpha);

class Grid;
using GridPtr = std::shared_ptr<const Grid>;

/// Strictly increasing nodes 0 = x_0 < ... < x_N = 1 with the exact per-cell
/// integrals of x^alpha.
class Grid {
public:
    Grid(std::vector<double> nodes, Degeneracy degeneracy);

    static GridPtr uniform(std::size_t cells, Degeneracy degeneracy);
    /// Geometric grading toward x = 0: consecutive widths grow by `ratio` (> 1).
    static GridPtr graded(std::size_t cells, Degeneracy degeneracy, double ratio);

    std::span<const double> nodes() const noexcept { return nodes_; }
    std::span<const double> cell_weights() const noexcept { return weights_; }
    std::size_t cells() const noexcept { return nodes_.size() - 1; }
    std::size_t size() const noexcept { return nodes_.size(); }
    double node(std::size_t i) const { return nodes_[i]; }
    double width(std::size_t cell) const { return nodes_[cell + 1] - nodes_[cell]; }
    double h_min() const noexcept { return h_min_; }
    double h_max() const noexcept { return h_max_; }

    const Degeneracy& degeneracy() const noexcept { return degeneracy_; }
    double alpha() const noexcept { return degeneracy_.alpha(); }
    Regime regime() const noexcept { return degeneracy_.regime(); }

    /// First and last node carrying an unknown in H^1_alpha problems.
    std::size_t first_free() const noexcept { return degeneracy_.pins_left() ? 1 : 0; }
    std::size_t last_free() const noexcept { return cells() - 1; }

    /// Index of the cell [x_i, x_{i+1}] containing x (the right cell at interior nodes).
    std::size_t locate(double x) const;
    /// Number of cells with positive-length overlap with (lo, hi).
    std::size_t cells_overlapping(double lo, double hi) const;

private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
    Degeneracy degeneracy_;
    double h_min_ = 0.0;
    double h_max_ = 0.0;
};

/// Which endpoint values a field is constrained to be zero at.
struct BoundaryTags {
    bool left = false;
    bool right = false;

    /// Constraints of an H^1_alpha member: u(1) = 0, plus u(0) = 0 in WDC.
    static BoundaryTags h1_alpha(Regime regime) { return {regime == Regime::WDC, true}; }
    static BoundaryTags none() { return {}; }
};

/// Continuous piecewise-linear function given by its nodal values.
class SpaceField {
public:
    SpaceField(GridPtr grid, std::vector<double> values, BoundaryTags tags = {});

    static SpaceField zeros(GridPtr grid, BoundaryTags tags = {});
    /// Nodal interpolant; constrained endpoints are set to zero exactly.
    static SpaceField interpolate(GridPtr grid, const std::function<double(double)>& fn,
                                  BoundaryTags tags = {});

    const Grid& grid() const noexcept { return *grid_; }
    const GridPtr& grid_ptr() const noexcept { return grid_; }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }
    BoundaryTags tags() const noexcept { return tags_; }

    /// Point evaluation of the interpolant.
    double operator()(double x) const;
    /// Constant derivative on cell i.
    double slope(std::size_t cell) const;

    bool satisfies_tags(double tol = 0.0) const;
    SpaceField scaled(double c) const;

private:
    GridPtr grid_;
    std::vector<double> values_;
    BoundaryTags tags_;
};

SpaceField operator-(const SpaceField& a, const SpaceField& b);
SpaceField operator+(const SpaceField& a, const SpaceField& b);

/// Nodal values on a grid at a sequence of time levels, stored level-major.
class SpaceTimeField {
public:
    SpaceTimeField(GridPtr grid, std::vector<double> times);
    SpaceTimeField(GridPtr grid, std::vector<double> times, std::vector<double> flat);

    static SpaceTimeField sample(GridPtr grid, std::vector<double> times,
                                 const std::function<double(double, double)>& fn);

    const Grid& grid() const noexcept { return *grid_; }
    const GridPtr& grid_ptr() const noexcept { return grid_; }
    std::span<const double> times() const noexcept { return times_; }
    std::size_t levels() const noexcept { return times_.size(); }
    std::span<const double> level(std::size_t k) const;
    std::span<double> level(std::size_t k);
    SpaceField slice(std::size_t k, BoundaryTags tags = {}) const;
    std::span<const double> flat() const noexcept { return data_; }

private:
    GridPtr grid_;
    std::vector<double> times_;
    std::vector<double> data_;
};

/// Scalar series over time levels.
struct TimeSeries {
    std::vector<double> times;
    std::vector<double> values;

    /// Trapezoid-rule integral of values^2 over the time axis.
    double l2_squared() const;
};

/// Trapezoid-rule integral of samples over the (possibly nonuniform) times.
double trapezoid(std::span<const double> times, std::span<const double> samples);

// Exact integrals of P1 quantities over [lo, hi] (subset of [0, 1]); cells
// straddling lo or hi are split there.
double integrate_square(const Grid& grid, std::span<const double> values, double lo, double hi);
double integrate_gradient_square(const Grid& grid, std::span<const double> values, double lo,
                                 double hi);
double integrate_weighted_gradient_square(const Grid& grid, std::span<const double> values,
                                          double lo, double hi);

double l2_inner(const SpaceField& a, const SpaceField& b);
double l2_norm_squared(const SpaceField& u);
double l2_norm(const SpaceField& u);
/// \int_0^1 x^alpha u_x^2 dx.
double weighted_gradient_squared(const SpaceField& u);
/// (||u||_{L^2}^2 + ||x^{alpha/2} u_x||_{L^2}^2)^{1/2}.
double h1_alpha_norm(const SpaceField& u);
/// ||f||_{L^1(0,T;L^2(0,1))} with the trapezoid rule in time.
double l1_l2_norm(const SpaceTimeField& f);

/// Result of checking the two embedding inequalities on [a, 1]:
///   ||u||_{H^1(a,1)} <= A1 ||u||_{H^1_alpha},  A1 = sqrt(max{1, a^-alpha})
///   ||u||_{C^{0,1/2}([a,1])} <= A2 ||u||_{H^1_alpha},
///   A2 = max{(1-a)^{-1/2}, (1-a)^{1/2} a^{-alpha/2}}
/// with the Hoelder norm taken as max(sup-norm, seminorm).
struct HolderReport {
    double a = 0.0;
    double sup_norm = 0.0;
    double seminorm = 0.0;
    double h1_interval_norm = 0.0;
    double h1_alpha_norm = 0.0;
    double constant_A1 = 0.0;
    double constant_A2 = 0.0;
    double slack_A1 = 0.0;
    double slack_A2 = 0.0;

    double holder_norm() const { return sup_norm > seminorm ? sup_norm : seminorm; }
    /// Both slacks >= -rel_tol * bound.
    bool holds(double rel_tol = 1e-9) const;
};

double embedding_constant_A1(double alpha, double a);
double embedding_constant_A2(double alpha, double a);

HolderReport holder_embedding_check(const SpaceField& u, double a);

} // namespace degwave
