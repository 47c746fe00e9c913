#pragma once

// Piecewise multiplier rho supported in (1 - kappa, 1], kappa = delta + gamma,
//
//   rho(x) = 0                                   0 <= x <= 1 - kappa
//          = (x - (1 - kappa))^2 / (2 delta gamma)  1 - kappa < x < 1 - delta
//          = (x - 1) / delta + 1 + gamma / (2 delta) 1 - delta <= x <= 1
//
// and the integral identity obtained by testing the wave equation against
// 2 rho u_x and rho' u.

#include "degwave/wave.hpp"

#include <string>
#include <vector>

namespace degwave {

class MultiplierProfile {
public:
    /// Requires 0 < gamma < delta and delta + gamma < 1; C^1 matching at the
    /// two junctions is checked here.
    static MultiplierProfile build(double delta, double gamma);

    double delta() const noexcept { return delta_; }
    double gamma() const noexcept { return gamma_; }
    double kappa() const noexcept { return delta_ + gamma_; }
    /// 1 - kappa and 1 - delta.
    double left_junction() const noexcept { return 1.0 - kappa(); }
    double right_junction() const noexcept { return 1.0 - delta_; }

    double value(double x) const;
    double d1(double x) const;
    /// Second derivative; taken as 0 at the junctions themselves.
    double d2(double x) const;

    /// Largest |jump| of value and first derivative across both junctions,
    /// evaluated from the closed-form pieces.
    double junction_mismatch() const;

private:
    MultiplierProfile(double delta, double gamma) : delta_(delta), gamma_(gamma) {}

    double delta_;
    double gamma_;
};

struct RhoPropertyReport {
    std::size_t samples = 0;
    double junction_mismatch = 0.0;
    double max_d1 = 0.0;
    double d1_bound = 0.0; ///< 2 / kappa
    double min_value = 0.0;
    double max_decrease = 0.0; ///< largest rho(x_i) - rho(x_{i+1}) over the samples
    double plateau_error = 0.0;  ///< max |rho' - 1/delta| on (1 - delta, 1)
    double curvature_error = 0.0; ///< max |rho'' - 1/(delta gamma)| on the quadratic piece
    double linear_curvature = 0.0; ///< max |rho''| on the linear piece
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
};

RhoPropertyReport rho_property_check(const MultiplierProfile& profile, std::size_t samples);

/// Every term of the multiplier identity
///
///   LHS = \iint 2 x^a u_x^2 rho' + \iint x^a u_x u rho''
///   RHS = \int u_x(t,1)^2 rho(1) + \iint a x^{a-1} u_x^2 rho + \iint 2 f u_x rho
///         - \int 2 u_t(T) u_x(T) rho + \int 2 u_1 u_{0,x} rho
///         + \iint f u rho' - \int u_t(T) u(T) rho' + \int u_1 u_0 rho'
///
/// evaluated with 3-point Gauss on cells split at the junctions and the
/// trapezoid rule in time.
struct MultiplierTerms {
    double gradient = 0.0;         ///< \iint 2 x^a u_x^2 rho'
    double mixed = 0.0;            ///< \iint x^a u_x u rho''
    double trace = 0.0;            ///< \int u_x(t,1)^2 rho(1)
    double degeneracy = 0.0;       ///< \iint a x^{a-1} u_x^2 rho
    double source_gradient = 0.0;  ///< \iint 2 f u_x rho
    double final_gradient = 0.0;   ///< \int 2 u_t(T) u_x(T) rho
    double initial_gradient = 0.0; ///< \int 2 u_1 u_{0,x} rho
    double source_value = 0.0;     ///< \iint f u rho'
    double final_value = 0.0;      ///< \int u_t(T) u(T) rho'
    double initial_value = 0.0;    ///< \int u_1 u_0 rho'

    double lhs() const { return gradient + mixed; }
    double rhs() const {
        return trace + degeneracy + source_gradient - final_gradient + initial_gradient + source_value -
               final_value + initial_value;
    }
    /// |LHS - RHS| / max(|LHS|, |RHS|, 1).
    double residual() const;
    /// \iint 2 x^a u_x^2 rho' restricted to the plateau (1 - delta, 1).
    double plateau_gradient = 0.0;
};

MultiplierTerms multiplier_identity_terms(const WaveSolution& solution, const WaveData& data,
                                          const MultiplierProfile& profile);

double multiplier_identity_residual(const WaveSolution& solution, const WaveData& data,
                                    const MultiplierProfile& profile);

} // namespace degwave
