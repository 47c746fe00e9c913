#pragma once

// Boundary-neighbourhood functionals
//
//   Theta(eps) = eps^-3 \int_0^T \int_{1-eps}^1 u^2,
//   G(eps)     = eps^-1 \int_0^T \int_{1-eps}^1 x^alpha u_x^2,  G(0) = \int_0^T u_x(t,1)^2,
//
// the data size N0 and the sweeps that compare them.

#include "degwave/random_data.hpp"
#include "degwave/wave.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace degwave {

/// ConfigError unless (1 - eps, 1) overlaps at least `min_cells` cells.
void require_resolved(const Grid& grid, double epsilon, std::size_t min_cells = 8);

double theta_functional(const SpaceTimeField& u, double epsilon);

/// eps > 0 uses the field; eps = 0 needs the trace series (ArgumentError otherwise).
double g_functional(const SpaceTimeField& u, double epsilon, const TimeSeries* trace = nullptr);

/// ||f||^2_{L^1(0,T;L^2)} + ||u0||^2_{H^1_alpha} + ||u1||^2_{L^2}.
double n0(const WaveData& data);

/// \int_0^T u_x(t,1)^2 / (||f||^2_{L^1 L^2} + E(0)); 0 when both vanish.
double hidden_regularity_ratio(const WaveSolution& solution, const WaveData& data);

/// sup_k (||u_t||^2_{L^2} + ||u||^2_{H^1_alpha}) / N0; 0 when both vanish.
double well_posedness_ratio(const WaveSolution& solution, const WaveData& data);

struct NeighborhoodTerms {
    double lhs = 0.0; ///< eps^-2 \int_{1-eps}^1 u^2
    double rhs = 0.0; ///< E / (2 (1 - eps0)^alpha)
    double slack() const { return rhs - lhs; }
};

/// The two sides at a single time level.
NeighborhoodTerms energy_neighborhood_terms(const Grid& grid, std::span<const double> u,
                                            std::span<const double> v, double epsilon, double epsilon0);

/// |u(t,x)|^2 against (1 - x) \int_x^1 u_x^2 at one point.
struct TfcSpot {
    double t = 0.0;
    double x = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
};

struct EnergyNeighborhoodReport {
    double epsilon = 0.0;
    double epsilon0 = 0.0;
    std::vector<double> times;
    std::vector<double> lhs;
    std::vector<double> rhs;
    std::vector<double> slack;
    std::vector<TfcSpot> tfc;
    /// min over levels of slack / rhs (0 where both sides vanish).
    double min_relative_slack = 0.0;
    double tfc_min_relative_slack = 0.0;

    /// Every slack >= -rel_tol * rhs, for the energy bound and the spot checks.
    bool holds(double rel_tol = 0.05) const;
};

/// Requires 0 < eps < eps0 < 1. The 10 spot checks use x >= 1 - eps0 drawn
/// from a generator seeded with `seed`.
EnergyNeighborhoodReport energy_neighborhood_check(const WaveSolution& solution, double epsilon,
                                                   double epsilon0, std::uint64_t seed = 0);

// ---------------------------------------------------------------------------
// Sweeps over a random data suite

struct SweepSettings {
    std::vector<double> alphas{0.5, 1.0, 1.5};
    std::vector<double> epsilons{0.4, 0.2, 0.1, 0.05};
    double epsilon0 = 0.5;
    double T = 2.0;
    /// Consecutive levels are compared for refinement stability.
    std::vector<std::size_t> levels{256, 512};
    double steps_per_cell = 1.0;
    Scheme scheme = Scheme::NewmarkAvgAccel;
    MassKind mass = MassKind::Consistent;
    SuiteSettings suite;
    std::size_t workers = 1;

    /// ConfigError on any inconsistency, naming the offending field.
    void validate() const;
};

struct RatioRecord {
    double alpha = 0.0;
    Regime regime = Regime::WDC;
    std::string datum_id;
    double epsilon = 0.0;
    double theta = 0.0;
    double g = 0.0;
    double n0 = 0.0;
    double theta_ratio = 0.0;
    double g_ratio = 0.0;
    std::size_t level = 0; ///< number of cells
    /// Theta <= G / (2 (1 - eps0)^alpha), which follows from Cauchy-Schwarz
    /// with u(1) = 0 and holds for P1 fields as well.
    bool theta_below_g = true;
    /// Minimum relative slack of the energy-neighbourhood bound over the run.
    double energy_relative_slack = 0.0;
    double tfc_relative_slack = 0.0;
};

struct DatumRecord {
    double alpha = 0.0;
    std::string datum_id;
    std::size_t level = 0;
    double n0 = 0.0;
    double energy0 = 0.0;
    double f_l1l2_squared = 0.0;
    double trace_l2_squared = 0.0; ///< G(0)
    double hidden_ratio = 0.0;
    double well_posedness_ratio = 0.0;
};

struct AlphaSummary {
    double alpha = 0.0;
    Regime regime = Regime::WDC;
    std::vector<std::size_t> levels;
    // Suprema over the suite and the eps grid, one entry per level.
    std::vector<double> sup_theta_ratio;
    std::vector<double> sup_g_ratio;
    std::vector<double> sup_trace_ratio;
    std::vector<double> sup_hidden_ratio;
    std::vector<double> sup_well_posedness_ratio;
    /// |sup_last - sup_prev| / sup_prev over the two finest levels (0 for a single level).
    double theta_stability = 0.0;
    double g_stability = 0.0;
    double hidden_stability = 0.0;
    double well_posedness_stability = 0.0;
    bool all_finite = true;
    double min_energy_relative_slack = 0.0;
    double min_tfc_relative_slack = 0.0;
    /// Empirical Theta constant on the finest level against the combination
    /// sup(G/N0) / (2 (1 - eps0)^alpha) built from the G constant.
    double theta_constant = 0.0;
    double theta_combination = 0.0;
    bool theta_below_g_everywhere = true;

    bool theta_within_factor_two() const { return theta_constant <= 2.0 * theta_combination; }
};

struct EstimateReport {
    std::vector<double> epsilon_grid;
    double epsilon0 = 0.0;
    double T = 0.0;
    std::vector<RatioRecord> records;
    std::vector<DatumRecord> data;
    std::vector<std::string> skipped; ///< "alpha=...: id (reason)"
    std::vector<AlphaSummary> summaries;

    bool all_skipped() const { return data.empty() && !skipped.empty(); }
};

/// Solves every suite datum for every alpha and level, then evaluates Theta,
/// G, N0 and the auxiliary ratios. Data with N0 = 0 are skipped and listed.
EstimateReport theorem_ratio_sweep(const SweepSettings& settings);

/// Same evaluation for caller-supplied data (one list per alpha, built on demand per problem).
using DataFactory = std::function<WaveData(const WaveProblem&)>;
struct NamedData {
    std::string id;
    DataFactory make;
};
EstimateReport theorem_ratio_sweep(const SweepSettings& settings,
                                   const std::function<std::vector<NamedData>(double alpha)>& suite);

} // namespace degwave
