#include "oracles.hpp"

#include "degwave/errors.hpp"
#include "degwave/estimators.hpp"
#include "degwave/transposition.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace degwave;
using doctest::Approx;

namespace {

WaveProblem make(double alpha, std::size_t n, double T) {
    WaveProblem p;
    p.grid = Grid::uniform(n, Degeneracy(alpha));
    p.nt = n;
    p.T = T;
    return p;
}

double max_nodal_error(const SpaceField& v, const std::function<double(double)>& exact) {
    double e = 0.0;
    for (std::size_t i = 0; i < v.grid().size(); ++i) {
        e = std::max(e, std::abs(v[i] - exact(v.grid().node(i))));
    }
    return e;
}

} // namespace

TEST_CASE("lifting of the initial velocity") {
    const auto g0 = Grid::uniform(64, Degeneracy(1.0));
    const auto zero = lift_initial_velocity(DualElement::from_l2(SpaceField::zeros(g0)));
    for (double v : zero.values()) {
        CHECK(v == 0.0);
    }
    // z1 = 1 - 4x, alpha = 1 lifts to x - x^2.
    const auto g1 = Grid::uniform(256, Degeneracy(1.0));
    const auto z1 = DualElement::from_l2(SpaceField::interpolate(g1, [](double x) { return 1.0 - 4.0 * x; }));
    CHECK(max_nodal_error(lift_initial_velocity(z1), [](double x) { return x - x * x; }) < 1e-4);
    // z1 = -1.5 sqrt(x), alpha = 3/2 lifts to 1 - x (first order, see the elliptic tests).
    const auto g2 = Grid::uniform(1024, Degeneracy(1.5));
    const auto z2 = DualElement::from_l2(SpaceField::interpolate(g2, [](double x) { return -1.5 * std::sqrt(x); }));
    CHECK(max_nodal_error(lift_initial_velocity(z2), [](double x) { return 1.0 - x; }) < 1e-3);
}

TEST_CASE("very weak solution of zero data is zero") {
    const auto p = make(0.5, 64, 1.0);
    const auto s = solve_very_weak(VeryWeakData::zero(p), p);
    for (double v : s.z.flat()) {
        CHECK(v == 0.0);
    }
}

TEST_CASE("very weak and weak solutions agree on regular data") {
    for (double alpha : {0.5, 1.5}) {
        const auto p = make(alpha, 256, 1.0);
        const auto d = make_duality_datum(DualityDatum::Regular, p);
        const auto vw = solve_very_weak(d, p);
        const auto wd = WaveData::from_functions(
            p, [](double, double) { return 0.0; }, [](double x) { return x - x * x; }, [](double) { return 0.0; });
        const auto w = solve_weak(p, wd);
        double dist = 0.0;
        for (std::size_t k = 0; k < w.levels(); ++k) {
            std::vector<double> diff(p.grid->size());
            for (std::size_t i = 0; i < diff.size(); ++i) {
                diff[i] = vw.z.level(k)[i] - w.u.level(k)[i];
            }
            dist = std::max(dist, std::sqrt(integrate_square(*p.grid, diff, 0.0, 1.0)));
        }
        CHECK(dist <= 1e-3);
        CHECK(transposition_well_posedness_ratio(vw, d) == Approx(1.0).epsilon(0.05));
    }
}

TEST_CASE("initial velocity of (0, 0, 1 - 4x) is recovered in H^-1") {
    const auto p = make(1.0, 256, 1.0);
    const auto d = make_duality_datum(DualityDatum::SmoothDual, p);
    const auto s = solve_very_weak(d, p);
    for (double v : s.z.level(0)) {
        CHECK(v == 0.0);
    }
    CHECK(initial_velocity_defect(s, d) <= 1e-2);
}

TEST_CASE("bump support condition") {
    SpaceTimeBump ok;
    CHECK_NOTHROW(ok.require_inside(1.0));
    SpaceTimeBump late{0.9, 0.2, 0.5, 0.25, 1.0};
    CHECK_THROWS_AS(late.require_inside(1.0), ArgumentError);
    SpaceTimeBump edge{0.5, 0.2, 0.9, 0.2, 1.0};
    CHECK_THROWS_AS(edge.require_inside(1.0), ArgumentError);
    for (const auto& F : bump_catalog(1.0)) {
        CHECK_NOTHROW(F.require_inside(1.0));
    }
}

TEST_CASE("duality on zero data") {
    const auto p = make(1.0, 64, 1.0);
    const auto d = VeryWeakData::zero(p);
    const auto s = solve_very_weak(d, p);
    for (const auto& F : bump_catalog(1.0)) {
        CHECK(duality_residual(s, d, F, p) == 0.0);
    }
}

TEST_CASE("duality residuals: regular data halve, H^-1 data decrease") {
    for (DualityDatum kind : {DualityDatum::Regular, DualityDatum::SmoothDual}) {
        std::vector<std::vector<double>> r;
        for (std::size_t n : {64, 128, 256}) {
            const auto p = make(1.0, n, 1.0);
            const auto d = make_duality_datum(kind, p);
            const auto s = solve_very_weak(d, p);
            std::vector<double> row;
            for (const auto& F : bump_catalog(1.0)) {
                row.push_back(duality_residual(s, d, F, p));
            }
            r.push_back(row);
        }
        for (std::size_t b = 0; b < r[0].size(); ++b) {
            CHECK(r[2][b] <= (kind == DualityDatum::Regular ? 1e-3 : 1e-2));
            CHECK(r[1][b] < r[0][b]);
            CHECK(r[2][b] < r[1][b]);
            if (kind == DualityDatum::Regular) {
                // Halving at +-30% would be a ratio in [0.35, 0.65]; the scheme is second order.
                CHECK(r[2][b] / r[1][b] <= 0.65);
            }
        }
    }
}

TEST_CASE("the H^-1 pairing sign is pinned by the flipped residual") {
    const auto p = make(1.0, 128, 1.0);
    const auto d = make_duality_datum(DualityDatum::SmoothDual, p);
    const auto s = solve_very_weak(d, p);
    const auto t = duality_terms(s, d, bump_catalog(1.0)[0], p);
    CHECK(t.residual() < 1e-2);
    CHECK(t.residual_with_flipped_pairing() > 0.5);
}

TEST_CASE("liminf: w-field control case") {
    LiminfSettings st;
    st.T = 2.0;
    st.epsilons = {0.4, 0.2, 0.1, 0.05};
    const auto rep = liminf_experiment(make_family("w-field", st), st);
    for (double th : rep.theta) {
        CHECK(std::abs(th - oracle::theta_w_field_T2) <= 1e-10);
    }
    CHECK(rep.trace_l2_squared == Approx(2.0).epsilon(1e-12));
    CHECK(std::abs(rep.slack) <= 1e-10);
}

TEST_CASE("liminf: zero family") {
    LiminfSettings st;
    st.cells = 128;
    st.steps_per_unit = 64;
    st.epsilons = {0.4, 0.2, 0.1};
    const auto rep = liminf_experiment(make_family("zero", st), st);
    for (double th : rep.theta) {
        CHECK(th == 0.0);
    }
    CHECK(rep.trace_l2_squared == 0.0);
    CHECK(rep.slack == 0.0);
}

TEST_CASE("liminf: constant family tracks the closed-form Theta_eps") {
    LiminfSettings st;
    const auto rep = liminf_experiment(make_family("constant-mms", st), st);
    REQUIRE(rep.theta.size() == 3);
    CHECK(rep.theta[0] == Approx(oracle::theta_constant_family_eps_0_2).epsilon(1e-3));
    CHECK(rep.theta[1] == Approx(oracle::theta_constant_family_eps_0_1).epsilon(1e-3));
    CHECK(rep.theta[2] == Approx(oracle::theta_constant_family_eps_0_05).epsilon(1e-3));
    CHECK(rep.trace_l2_squared == Approx(oracle::trace_norm2_cos_T_pi).epsilon(1e-4));
    const double lim = oracle::theta_constant_family_limit;
    CHECK(std::abs(rep.theta[2] - lim) < std::abs(rep.theta[1] - lim));
    CHECK(std::abs(rep.theta[1] - lim) < std::abs(rep.theta[0] - lim));
    CHECK(rep.hypothesis_holds);
    // The Richardson estimate removes the O(eps) term.
    CHECK(std::abs(rep.slack_richardson) < std::abs(rep.slack_tail_minimum));
}

TEST_CASE("liminf: decaying family converges weakly") {
    LiminfSettings st;
    st.cells = 256;
    const auto rep = liminf_experiment(make_family("decaying-mms", st), st);
    CHECK(rep.weak_defect[1] < rep.weak_defect[0]);
    CHECK(rep.weak_defect[2] < rep.weak_defect[1]);
    CHECK(rep.hypothesis_holds);
}

TEST_CASE("liminf: unknown family and estimator names") {
    LiminfSettings st;
    CHECK_THROWS_AS(make_family("nope", st), ConfigError);
    CHECK_THROWS_AS(liminf_estimator_from_string("nope"), ConfigError);
    CHECK(liminf_estimator_from_string("richardson") == LiminfEstimator::Richardson);
}
