"""Symbolic reference values for the unit and acceptance tests.

Everything here is computed with sympy, independently of the C++ code, and
frozen into tests/unit/oracles.hpp:

    python3 tests/oracles/derive.py --emit tests/unit/oracles.hpp
    python3 tests/oracles/derive.py --check tests/unit/oracles.hpp
"""

import argparse
import sys

import sympy as sp

x, y, t, e = sp.symbols("x y t epsilon", positive=True)
R = sp.Rational


def weight(lo, hi, a):
    return sp.integrate(x**a, (x, lo, hi))


def h1a_norm(u, a):
    return sp.sqrt(sp.integrate(u**2, (x, 0, 1)) + sp.integrate(x**a * sp.diff(u, x) ** 2, (x, 0, 1)))


def rho(delta, gamma):
    kappa = delta + gamma
    return sp.Piecewise(
        (0, x <= 1 - kappa),
        ((x - (1 - kappa)) ** 2 / (2 * delta * gamma), x <= 1 - delta),
        (gamma / (2 * delta) + (x - (1 - delta)) / delta, True),
    )


def pieces(delta, gamma):
    """rho on the three intervals, as (lo, hi, expr)."""
    kappa = delta + gamma
    return [
        (0, 1 - kappa, sp.Integer(0)),
        (1 - kappa, 1 - delta, (x - (1 - kappa)) ** 2 / (2 * delta * gamma)),
        (1 - delta, 1, gamma / (2 * delta) + (x - (1 - delta)) / delta),
    ]


def piecewise_integral(delta, gamma, integrand):
    """\\int_0^1 integrand(r, r', r'') dx over the three pieces of rho."""
    total = 0
    for lo, hi, r in pieces(delta, gamma):
        total += sp.integrate(integrand(r, sp.diff(r, x), sp.diff(r, x, 2)), (x, lo, hi))
    return sp.nsimplify(total)


def multiplier_static_terms():
    """Identity terms for u = 1 - x held fixed, alpha = 1, f = alpha x^(alpha-1) = 1, T = 1."""
    alpha, T = 1, 1
    delta, gamma = R(1, 10), R(1, 20)
    u = 1 - x
    ux = sp.diff(u, x)
    f = alpha * x ** (alpha - 1)
    terms = {
        "gradient": T * piecewise_integral(delta, gamma, lambda r, r1, r2: 2 * x**alpha * ux**2 * r1),
        "mixed": T * piecewise_integral(delta, gamma, lambda r, r1, r2: x**alpha * ux * u * r2),
        "trace": T * ux.subs(x, 1) ** 2 * (gamma / (2 * delta) + 1),
        "degeneracy": T * piecewise_integral(delta, gamma, lambda r, r1, r2: alpha * x ** (alpha - 1) * ux**2 * r),
        "source_gradient": T * piecewise_integral(delta, gamma, lambda r, r1, r2: 2 * f * ux * r),
        "source_value": T * piecewise_integral(delta, gamma, lambda r, r1, r2: f * u * r1),
    }
    return terms


def values():
    v = {}
    h = sp.Symbol("h", positive=True)
    v["cell_weight_0_h_alpha1_over_h2"] = sp.simplify(weight(0, h, 1) / h**2)
    v["cell_weight_0_1_alpha_half"] = weight(0, 1, R(1, 2))
    v["cell_weight_half_1_alpha1"] = weight(R(1, 2), 1, 1)

    v["h1a_norm_one_minus_x_alpha1"] = h1a_norm(1 - x, 1)
    v["h1a_norm_poly_alpha1"] = h1a_norm(x - x**2, 1)

    # Holder check of u = 1 - x on [1/4, 1] with alpha = 1.
    a = R(1, 4)
    v["holder_sup_one_minus_x_a_quarter"] = sp.Max(*[abs(1 - s) for s in (a, 1)])
    seminorm = sp.sqrt(1 - a)  # |x - y|^(1/2) is largest at the ends of [a, 1]
    v["holder_seminorm_one_minus_x_a_quarter"] = seminorm
    v["embedding_A1_alpha1_a_quarter"] = sp.sqrt(sp.Max(1, 1 / a**1))
    v["embedding_A2_alpha1_a_quarter"] = sp.Max(1 / sp.sqrt(1 - a), sp.sqrt(1 - a) / a ** R(1, 2))

    # Stiffness diagonal, N = 2, alpha = 1: (w0 + w1) / h^2.
    hh = R(1, 2)
    v["stiffness_n2_alpha1_diag"] = (weight(0, hh, 1) + weight(hh, 1, 1)) / hh**2

    # Poisson right-hand sides from the substitution (x^a v_x)_x = g.
    g1 = sp.diff(x * sp.diff(x - x**2, x), x)
    g2 = sp.diff(x ** R(3, 2) * sp.diff(1 - x, x), x)
    assert sp.simplify(g1 - (1 - 4 * x)) == 0
    assert sp.simplify(g2 + R(3, 2) * sp.sqrt(x)) == 0
    v["poisson_g1_at_0"] = g1.subs(x, 0)
    v["poisson_g1_slope"] = sp.diff(g1, x)
    v["poisson_g2_coefficient"] = sp.simplify(g2 / sp.sqrt(x))

    # ||z||_{H^-1_alpha} with representative x - x^2.
    for name, al in (("alpha1", 1), ("alpha_half", R(1, 2))):
        v["hminus1_norm_poly_" + name] = sp.sqrt(sp.integrate(x**al * (1 - 2 * x) ** 2, (x, 0, 1)))

    # Manufactured source for u = cos t (x - x^2), alpha = 1, and for u = cos t (1 - x), alpha = 3/2.
    u_w = sp.cos(t) * (x - x**2)
    f_w = sp.expand(sp.diff(u_w, t, 2) - sp.diff(x * sp.diff(u_w, x), x))
    assert sp.simplify(f_w - (x**2 + 3 * x - 1) * sp.cos(t)) == 0
    v["mms_wdc_f_at_t0_x_half"] = f_w.subs({t: 0, x: R(1, 2)})
    u_s = sp.cos(t) * (1 - x)
    f_s = sp.diff(u_s, t, 2) - sp.diff(x ** R(3, 2) * sp.diff(u_s, x), x)
    v["mms_sdc_f_at_t0_x_ninth"] = sp.nsimplify(f_s.subs({t: 0, x: R(1, 9)}))

    v["energy_poly_alpha1"] = R(1, 2) * sp.integrate(x * (1 - 2 * x) ** 2, (x, 0, 1))
    v["energy_unit_velocity"] = R(1, 2) * sp.integrate(1, (x, 0, 1))
    v["trace_norm2_cos_T_pi"] = sp.integrate(sp.cos(t) ** 2, (t, 0, sp.pi))

    # Theta and G.
    theta = lambda u, T, eps: sp.integrate(sp.integrate(u**2, (x, 1 - eps, 1)), (t, 0, T)) / eps**3
    v["theta_w_field_T2"] = sp.simplify(theta(1 - x + 0 * t, 2, e))
    v["theta_square_T1_over_eps2"] = sp.simplify(theta((1 - x) ** 2 + 0 * t, 1, e) / e**2)
    G = lambda u, T, eps, al: sp.integrate(
        sp.integrate(x**al * sp.diff(u, x) ** 2, (x, 1 - eps, 1)), (t, 0, T)
    ) / eps
    v["g_one_minus_x_alpha1_eps_tenth"] = G(1 - x + 0 * t, 1, R(1, 10), 1)

    v["n0_poly_alpha1"] = h1a_norm(x - x**2, 1) ** 2
    v["n0_unit_source_T2"] = sp.integrate(sp.sqrt(sp.integrate(1, (x, 0, 1))), (t, 0, 2)) ** 2

    # Frozen profile x - x^2 at alpha = 1, eps = 0.1, eps0 = 0.5.
    eps, eps0 = R(1, 10), R(1, 2)
    v["neighborhood_lhs_poly"] = sp.integrate((x - x**2) ** 2, (x, 1 - eps, 1)) / eps**2
    v["neighborhood_rhs_poly"] = v["energy_poly_alpha1"] / (2 * (1 - eps0) ** 1)

    # Constant family cos t (x - x^2), T = pi: Theta_eps in closed form.
    theta_c = sp.simplify(theta(sp.cos(t) * (x - x**2), sp.pi, e))
    assert sp.simplify(theta_c - sp.pi * (6 * e**2 - 15 * e + 10) / 60) == 0
    for name, ev in (("0_2", R(1, 5)), ("0_1", R(1, 10)), ("0_05", R(1, 20))):
        v["theta_constant_family_eps_" + name] = theta_c.subs(e, ev)
    v["theta_constant_family_limit"] = sp.limit(theta_c, e, 0)

    # Multiplier profile values.
    d, g = R(1, 10), R(1, 20)
    r = rho(d, g)
    v["rho_at_0_85"] = r.subs(x, R(85, 100))
    v["rho_at_0_9"] = r.subs(x, R(9, 10))
    v["rho_at_1"] = r.subs(x, 1)
    v["rho_max_d1"] = 1 / d
    v["rho_d1_bound"] = 2 / (d + g)
    v["rho_d2_quadratic_delta_0_2_gamma_0_1"] = 1 / (R(1, 5) * R(1, 10))

    for k, val in multiplier_static_terms().items():
        v["multiplier_static_" + k] = val
    return v


def emit(v):
    lines = [
        "#pragma once",
        "",
        "// Generated by tests/oracles/derive.py (sympy); do not edit by hand.",
        "",
        "namespace oracle {",
        "",
    ]
    for k in sorted(v):
        num = sp.N(v[k], 30)
        lines.append("inline constexpr double %s = %s;" % (k, sp.Float(num, 20)))
    lines += ["", "} // namespace oracle", ""]
    return "\n".join(lines)


def main():
    ap = argparse.ArgumentParser()
    g = ap.add_mutually_exclusive_group(required=True)
    g.add_argument("--emit", metavar="PATH")
    g.add_argument("--check", metavar="PATH")
    args = ap.parse_args()
    text = emit(values())
    if args.emit:
        with open(args.emit, "w") as fh:
            fh.write(text)
        return 0
    with open(args.check) as fh:
        frozen = fh.read()
    if frozen != text:
        sys.stderr.write("frozen oracle values differ from a fresh derivation\n")
        return 1
    print("oracle values up to date")
    return 0


if __name__ == "__main__":
    sys.exit(main())
