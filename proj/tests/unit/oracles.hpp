#pragma once

// Generated by tests/oracles/derive.py (sympy); do not edit by hand.

namespace oracle {

inline constexpr double cell_weight_0_1_alpha_half = 0.66666666666666666667;
inline constexpr double cell_weight_0_h_alpha1_over_h2 = 0.50000000000000000000;
inline constexpr double cell_weight_half_1_alpha1 = 0.37500000000000000000;
inline constexpr double embedding_A1_alpha1_a_quarter = 2.0000000000000000000;
inline constexpr double embedding_A2_alpha1_a_quarter = 1.7320508075688772935;
inline constexpr double energy_poly_alpha1 = 0.083333333333333333333;
inline constexpr double energy_unit_velocity = 0.50000000000000000000;
inline constexpr double g_one_minus_x_alpha1_eps_tenth = 0.95000000000000000000;
inline constexpr double h1a_norm_one_minus_x_alpha1 = 0.91287092917527685576;
inline constexpr double h1a_norm_poly_alpha1 = 0.44721359549995793928;
inline constexpr double hminus1_norm_poly_alpha1 = 0.40824829046386301637;
inline constexpr double hminus1_norm_poly_alpha_half = 0.45773770821706345827;
inline constexpr double holder_seminorm_one_minus_x_a_quarter = 0.86602540378443864676;
inline constexpr double holder_sup_one_minus_x_a_quarter = 0.75000000000000000000;
inline constexpr double mms_sdc_f_at_t0_x_ninth = -0.38888888888888888889;
inline constexpr double mms_wdc_f_at_t0_x_half = 0.75000000000000000000;
inline constexpr double multiplier_static_degeneracy = 0.079166666666666666667;
inline constexpr double multiplier_static_gradient = 2.3416666666666666667;
inline constexpr double multiplier_static_mixed = -1.0916666666666666667;
inline constexpr double multiplier_static_source_gradient = -0.15833333333333333333;
inline constexpr double multiplier_static_source_value = 0.079166666666666666667;
inline constexpr double multiplier_static_trace = 1.2500000000000000000;
inline constexpr double n0_poly_alpha1 = 0.20000000000000000000;
inline constexpr double n0_unit_source_T2 = 4.0000000000000000000;
inline constexpr double neighborhood_lhs_poly = 0.028533333333333333333;
inline constexpr double neighborhood_rhs_poly = 0.083333333333333333333;
inline constexpr double poisson_g1_at_0 = 1.0000000000000000000;
inline constexpr double poisson_g1_slope = -4.0000000000000000000;
inline constexpr double poisson_g2_coefficient = -1.5000000000000000000;
inline constexpr double rho_at_0_85 = 0.0;
inline constexpr double rho_at_0_9 = 0.25000000000000000000;
inline constexpr double rho_at_1 = 1.2500000000000000000;
inline constexpr double rho_d1_bound = 13.333333333333333333;
inline constexpr double rho_d2_quadratic_delta_0_2_gamma_0_1 = 50.000000000000000000;
inline constexpr double rho_max_d1 = 10.000000000000000000;
inline constexpr double stiffness_n2_alpha1_diag = 2.0000000000000000000;
inline constexpr double theta_constant_family_eps_0_05 = 0.48511426559182390591;
inline constexpr double theta_constant_family_eps_0_1 = 0.44820055191214383535;
inline constexpr double theta_constant_family_eps_0_2 = 0.37908551353316838411;
inline constexpr double theta_constant_family_limit = 0.52359877559829887308;
inline constexpr double theta_square_T1_over_eps2 = 0.20000000000000000000;
inline constexpr double theta_w_field_T2 = 0.66666666666666666667;
inline constexpr double trace_norm2_cos_T_pi = 1.5707963267948966192;

} // namespace oracle
