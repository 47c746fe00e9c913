#pragma once

// Very weak solutions of z_tt - (x^alpha z_x)_x = g, z(0) = z0 in L^2,
// z_t(0) = z1 in H^{-1}_alpha, obtained as z = psi_t where psi is the weak
// solution with data (G, psi0, z0), G(t) = \int_0^t g and
// (x^alpha psi0_x)_x = z1.

#include "degwave/elliptic.hpp"
#include "degwave/wave.hpp"

#include <optional>
#include <string>
#include <vector>

namespace degwave {

struct VeryWeakData {
    SpaceTimeField g;
    SpaceField z0;
    DualElement z1;

    /// g = 0, z0 = 0, z1 = 0 on the problem's grid and time axis.
    static VeryWeakData zero(const WaveProblem& problem);
};

struct VeryWeakSolution {
    SpaceTimeField z; ///< psi_t
    WaveSolution psi; ///< lifted weak solution
    SpaceField psi0;

    const Grid& grid() const { return z.grid(); }
};

/// psi0 in H^1_alpha with \int x^alpha psi0_x phi_x = -<z1, phi>.
SpaceField lift_initial_velocity(const DualElement& z1);

VeryWeakSolution solve_very_weak(const VeryWeakData& data, const WaveProblem& problem);

/// ||z_t(0) - z1||_{H^{-1}_alpha}, with z_t(0) the lifted solution's initial acceleration.
double initial_velocity_defect(const VeryWeakSolution& solution, const VeryWeakData& data);

/// Time derivative of the lifted solution's boundary flux, i.e. z_x(t, 1).
/// Central differences inside, second-order one-sided at the ends.
TimeSeries very_weak_trace(const VeryWeakSolution& solution);

/// sup_k (||z||^2_{L^2} + ||z_t||^2_{H^{-1}_alpha}) / (||g||^2_{L^1 L^2} + ||z1||^2_{H^{-1}_alpha} + ||z0||^2_{L^2}),
/// with the H^{-1}_alpha norm evaluated every `stride` levels.
double transposition_well_posedness_ratio(const VeryWeakSolution& solution, const VeryWeakData& data,
                                          std::size_t stride = 8);

/// A(t) B(x) with smooth bumps b(s) = exp(-1/(1 - s^2)) centred at (t_c, x_c).
struct SpaceTimeBump {
    double t_center = 0.5;
    double t_radius = 0.25;
    double x_center = 0.5;
    double x_radius = 0.25;
    double amplitude = 1.0;

    double operator()(double t, double x) const;
    /// ArgumentError unless the support closure lies inside (0, T) x (0, 1).
    void require_inside(double T) const;
};

/// The terms of the duality identity
///   \iint z F = -(z0, theta_t(0)) + <z1, theta(0)> + \iint g theta,
/// where theta solves the adjoint problem with theta(T) = theta_t(T) = 0.
struct DualityTerms {
    double lhs = 0.0;
    double initial_displacement = 0.0; ///< -(z0, theta_t(0))
    double velocity_pairing = 0.0;     ///< <z1, theta(0)> = -\int x^alpha psi0_x theta_x(0)
    double source = 0.0;               ///< \iint g theta

    double rhs() const { return initial_displacement + velocity_pairing + source; }
    /// |LHS - RHS| / max(|LHS|, |RHS|), 0 when both vanish.
    double residual() const;
    /// Residual with the opposite sign on the H^{-1}_alpha pairing.
    double residual_with_flipped_pairing() const;
};

/// Adjoint solution theta on the forward time axis, from a forward solve in
/// reversed time tau = T - t.
struct AdjointSolution {
    SpaceTimeField theta;
    SpaceTimeField theta_t;
};

AdjointSolution solve_adjoint(const WaveProblem& problem, const SpaceTimeBump& F);

DualityTerms duality_terms(const VeryWeakSolution& solution, const VeryWeakData& data,
                           const SpaceTimeBump& F, const WaveProblem& problem);

double duality_residual(const VeryWeakSolution& solution, const VeryWeakData& data, const SpaceTimeBump& F,
                        const WaveProblem& problem);

// ---------------------------------------------------------------------------
// Data catalog

enum class DualityDatum {
    Zero,       ///< (0, 0, 0)
    Regular,    ///< z0 = x - x^2, z1 = 0, g = 0
    SmoothDual, ///< z0 = 0, z1 = 1 - 4x, g = 0
    PointMass,  ///< z0 = 0, z1 = point evaluation at x = 1/2 (not in L^2), g = 0
    Forced,     ///< z0 = 0, z1 = 0, g = cos(t) sin(pi x)
};

std::string_view to_string(DualityDatum datum);
DualityDatum duality_datum_from_string(std::string_view name);
VeryWeakData make_duality_datum(DualityDatum datum, const WaveProblem& problem);

/// Two bumps with support inside (0, T) x (0, 1).
std::vector<SpaceTimeBump> bump_catalog(double T);

// ---------------------------------------------------------------------------
// Liminf experiment

enum class LiminfEstimator {
    TailMinimum, ///< min of Theta over the tail half of the decreasing eps grid
    Richardson,  ///< min over the tail half of pairwise linear extrapolations to eps = 0
};

std::string_view to_string(LiminfEstimator estimator);
LiminfEstimator liminf_estimator_from_string(std::string_view name);

struct FamilyMember {
    double epsilon = 0.0;
    VeryWeakData data;
};

/// Data (h_eps, phi0_eps, phi1_eps) per eps and the limit data (h, phi0, phi1).
/// A member may instead carry a ready-made field (synthetic control cases),
/// in which case `synthetic_trace` supplies its boundary derivative.
struct ConvergentFamily {
    std::string name;
    WaveProblem problem; ///< grid and time axis every member lives on
    std::vector<FamilyMember> members;
    std::optional<VeryWeakData> limit;
    std::optional<SpaceTimeField> synthetic_field;
    std::optional<TimeSeries> synthetic_trace;
};

struct LiminfSettings {
    double alpha = 1.0;
    double T = 3.141592653589793;
    std::size_t cells = 256;
    /// nt = ceil(steps_per_unit * T).
    double steps_per_unit = 256.0;
    std::vector<double> epsilons{0.2, 0.1, 0.05};
    LiminfEstimator estimator = LiminfEstimator::TailMinimum;
    /// Growth exponent of Theta in 1/eps above which the boundedness hypothesis is deemed violated.
    double growth_limit = 0.5;

    WaveProblem problem() const;
};

/// Builds a named family on the settings' grid: "zero", "constant-mms",
/// "decaying-mms" or "w-field".
ConvergentFamily make_family(std::string_view name, const LiminfSettings& settings);

struct LiminfReport {
    std::string family;
    std::vector<double> epsilons;
    std::vector<double> theta;
    /// Max over the 10-function battery of |pairing with (h_eps - h, phi0_eps - phi0, phi1_eps - phi1)|.
    std::vector<double> weak_defect;
    double growth_exponent = 0.0;
    bool hypothesis_holds = true;
    LiminfEstimator estimator = LiminfEstimator::TailMinimum;
    double tail_minimum = 0.0;
    double richardson = 0.0;
    double liminf_estimate = 0.0;
    double trace_l2_squared = 0.0; ///< ||phi_x(., 1)||^2_{L^2(0,T)}
    /// liminf_estimate - trace_l2_squared / 3 (NaN when the hypothesis fails).
    double slack = 0.0;
    double slack_tail_minimum = 0.0;
    double slack_richardson = 0.0;
};

LiminfReport liminf_experiment(const ConvergentFamily& family, const LiminfSettings& settings);

} // namespace degwave
