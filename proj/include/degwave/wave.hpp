#pragma once

// Weak solutions of u_tt - (x^alpha u_x)_x = f on (0,T) x (0,1) with u(t,1) = 0
// and the regime condition at x = 0, computed by P1 elements in space and a
// second-order time integrator on the semi-discrete system M u'' + K u = F.

#include "degwave/elliptic.hpp"
#include "degwave/spaces.hpp"

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace degwave {

enum class Scheme { NewmarkAvgAccel, Leapfrog };

std::string_view to_string(Scheme scheme);
Scheme scheme_from_string(std::string_view name);

using SourceFn = std::function<double(double t, double x)>;

struct WaveProblem {
    GridPtr grid;
    double T = 1.0;
    std::size_t nt = 1;
    Scheme scheme = Scheme::NewmarkAvgAccel;
    MassKind mass = MassKind::Consistent;
    /// Leapfrog stability factor; the limit is cfl * h_min for lumped mass and
    /// cfl * h_min / sqrt(3) for consistent mass.
    double cfl = 0.9;

    double dt() const { return T / static_cast<double>(nt); }
    std::vector<double> times() const;
    /// Throws ConfigError for a Leapfrog step above the stability limit.
    void validate() const;
};

/// Source, initial displacement and initial velocity. When `f_exact` is set the
/// load vectors are assembled from it by Gauss quadrature; `f` always holds the
/// nodal samples used for data norms.
struct WaveData {
    SpaceTimeField f;
    SpaceField u0;
    SpaceField u1;
    SourceFn f_exact;

    static WaveData zero(const WaveProblem& problem);
    /// Samples closed-form data on the problem's grid and time levels.
    static WaveData from_functions(const WaveProblem& problem, SourceFn f,
                                   const std::function<double(double)>& u0,
                                   const std::function<double(double)>& u1);
};

struct WaveSolution {
    SpaceTimeField u;  ///< displacement
    SpaceTimeField v;  ///< velocity u_t
    SpaceTimeField a;  ///< acceleration u_tt
    TimeSeries energy; ///< E(t_k)
    TimeSeries trace;  ///< u_x(t_k, 1) by consistent flux recovery

    const Grid& grid() const { return u.grid(); }
    std::size_t levels() const { return u.levels(); }
};

WaveSolution solve_weak(const WaveProblem& problem, const WaveData& data);

/// E = 1/2 \int (v^2 + x^alpha u_x^2) with exact quadrature of the P1 fields.
double energy(const Grid& grid, std::span<const double> u, std::span<const double> v);
double energy(const WaveSolution& solution, std::size_t k);

struct TraceResult {
    TimeSeries trace;
    double l2_squared = 0.0; ///< \int_0^T u_x(t,1)^2 dt, trapezoid rule
};
TraceResult boundary_trace(const WaveSolution& solution);

/// Load vector F_i = \int f phi_i on all nodes.
std::vector<double> assemble_load(const Grid& grid, const SourceFn& f, double t);

/// Nodal samples of fn; a non-finite value at x = 0 (integrable singularity)
/// is replaced by the mean of fn over the first cell.
std::vector<double> sample_nodes(const Grid& grid, const std::function<double(double)>& fn);

// ---------------------------------------------------------------------------
// Manufactured solutions

enum class CatalogEntry {
    Zero,          ///< u = 0
    WdcPolynomial, ///< u = cos(t) (x - x^2); admissible in both regimes
    SdcLinear,     ///< u = cos(t) (1 - x); SDC only
};

std::string_view to_string(CatalogEntry entry);
CatalogEntry catalog_from_string(std::string_view name);

struct ClosedFormSolution {
    std::function<double(double, double)> u;
    std::function<double(double, double)> u_t;
    std::function<double(double, double)> u_x;
    SourceFn f;
};

/// Closed-form pair for an entry; ConfigError if the entry violates the regime's
/// boundary condition at x = 0.
ClosedFormSolution closed_form(CatalogEntry entry, double alpha);

struct ManufacturedProblem {
    WaveData data;
    SpaceTimeField exact;
    ClosedFormSolution solution;
};

ManufacturedProblem manufactured_problem(CatalogEntry entry, const WaveProblem& problem);

struct ConvergenceRow {
    std::size_t cells = 0;
    std::size_t steps = 0;
    double h = 0.0;
    double dt = 0.0;
    double l2_error = 0.0;    ///< max over levels of ||u_h - u||_{L^2}
    double trace_error = 0.0; ///< ||trace_h - u_x(.,1)||_{L^2(0,T)}
    double order_l2 = 0.0;    ///< log2 ratio against the previous row (NaN on the first)
    double order_trace = 0.0;
};

struct ConvergenceSettings {
    CatalogEntry entry = CatalogEntry::WdcPolynomial;
    double alpha = 1.0;
    double T = 1.0;
    std::vector<std::size_t> levels{64, 128, 256};
    /// nt = ceil(steps_per_cell * T * N), so dt is proportional to h.
    double steps_per_cell = 1.0;
    Scheme scheme = Scheme::NewmarkAvgAccel;
    MassKind mass = MassKind::Consistent;
};

std::vector<ConvergenceRow> convergence_study(const ConvergenceSettings& settings);

/// L^2(0,1) distance between a P1 field and a function (5-point Gauss per cell).
double l2_distance(const Grid& grid, std::span<const double> values,
                   const std::function<double(double)>& fn);

} // namespace degwave
