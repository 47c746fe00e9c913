#include "oracles.hpp"

#include "degwave/errors.hpp"
#include "degwave/estimators.hpp"

#include <doctest.h>

#include <cmath>

using namespace degwave;
using doctest::Approx;

namespace {

std::vector<double> axis(double T, std::size_t nt) {
    std::vector<double> t(nt + 1);
    for (std::size_t k = 0; k <= nt; ++k) {
        t[k] = T * static_cast<double>(k) / static_cast<double>(nt);
    }
    return t;
}

WaveProblem make(double alpha, std::size_t n, std::size_t nt, double T) {
    WaveProblem p;
    p.grid = Grid::uniform(n, Degeneracy(alpha));
    p.nt = nt;
    p.T = T;
    return p;
}

} // namespace

TEST_CASE("Theta of (1 - x) on (0,2) is 2/3 for every eps") {
    const auto g = Grid::uniform(400, Degeneracy(1.0));
    const auto w = SpaceTimeField::sample(g, axis(2.0, 10), [](double, double x) { return 1.0 - x; });
    for (double eps : {0.4, 0.2, 0.1, 0.05}) {
        CHECK(std::abs(theta_functional(w, eps) - oracle::theta_w_field_T2) <= 1e-10);
    }
}

TEST_CASE("Theta of (1 - x)^2 on (0,1) is eps^2 / 5") {
    const auto g = Grid::uniform(1000, Degeneracy(1.0));
    const auto u = SpaceTimeField::sample(g, axis(1.0, 4), [](double, double x) { return (1 - x) * (1 - x); });
    for (double eps : {0.4, 0.2, 0.1}) {
        CHECK(theta_functional(u, eps) == Approx(oracle::theta_square_T1_over_eps2 * eps * eps).epsilon(1e-4));
    }
    const auto z = SpaceTimeField::sample(g, axis(1.0, 4), [](double, double) { return 0.0; });
    CHECK(theta_functional(z, 0.1) == 0.0);
}

TEST_CASE("G of 1 - x") {
    const auto g = Grid::uniform(100, Degeneracy(1.0));
    const auto u = SpaceTimeField::sample(g, axis(1.0, 4), [](double, double x) { return 1.0 - x; });
    CHECK(g_functional(u, 0.1) == Approx(oracle::g_one_minus_x_alpha1_eps_tenth).epsilon(1e-13));
    CHECK_THROWS_AS(g_functional(u, 0.0), ArgumentError);
    TimeSeries trace{{0.0, 1.0, 2.0}, {-1.0, -1.0, -1.0}};
    CHECK(g_functional(u, 0.0, &trace) == Approx(2.0));
}

TEST_CASE("under-resolved neighbourhood names the minimum mesh") {
    const auto g = Grid::uniform(64, Degeneracy(1.0));
    const auto u = SpaceTimeField::sample(g, axis(1.0, 4), [](double, double x) { return 1.0 - x; });
    try {
        theta_functional(u, 0.05);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("160") != std::string::npos);
    }
    CHECK_NOTHROW(theta_functional(u, 0.125));
}

TEST_CASE("N0 of the reference data") {
    const auto p = make(1.0, 2048, 8, 1.0);
    const auto d = WaveData::from_functions(
        p, [](double, double) { return 0.0; }, [](double x) { return x - x * x; }, [](double) { return 0.0; });
    CHECK(n0(d) == Approx(oracle::n0_poly_alpha1).epsilon(1e-6));
    const auto q = make(1.0, 16, 8, 2.0);
    const auto f1 = WaveData::from_functions(
        q, [](double, double) { return 1.0; }, [](double) { return 0.0; }, [](double) { return 0.0; });
    CHECK(n0(f1) == Approx(oracle::n0_unit_source_T2).epsilon(1e-13));
    CHECK(n0(WaveData::zero(q)) == 0.0);
}

TEST_CASE("frozen-profile energy neighbourhood terms") {
    const auto g = Grid::uniform(4096, Degeneracy(1.0));
    const auto u = sample_nodes(*g, [](double x) { return x - x * x; });
    const std::vector<double> v(g->size(), 0.0);
    const auto t = energy_neighborhood_terms(*g, u, v, 0.1, 0.5);
    CHECK(t.lhs == Approx(oracle::neighborhood_lhs_poly).epsilon(1e-3));
    CHECK(t.rhs == Approx(oracle::neighborhood_rhs_poly).epsilon(1e-3));
    CHECK(t.slack() > 0.0);
    CHECK_THROWS_AS(energy_neighborhood_terms(*g, u, v, 0.5, 0.5), ArgumentError);
    const std::vector<double> z(g->size(), 0.0);
    CHECK(energy_neighborhood_terms(*g, z, z, 0.1, 0.5).slack() == 0.0);
}

TEST_CASE("property: G(eps) tends to G(0) on MMS solutions") {
    const auto p = make(1.0, 512, 512, 1.0);
    const auto m = manufactured_problem(CatalogEntry::WdcPolynomial, p);
    const auto s = solve_weak(p, m.data);
    const double g0 = g_functional(s.u, 0.0, &s.trace);
    double prev = INFINITY;
    for (double eps : {0.2, 0.1, 0.05, 0.025}) {
        const double gap = std::abs(g_functional(s.u, eps) - g0);
        CHECK(gap < prev);
        prev = gap;
    }
}

TEST_CASE("property: energy neighbourhood bound along MMS and suite runs") {
    const auto p = make(1.0, 256, 256, 1.0);
    const auto m = manufactured_problem(CatalogEntry::WdcPolynomial, p);
    const auto s = solve_weak(p, m.data);
    for (double eps : {0.4, 0.2, 0.1, 0.05}) {
        const auto rep = energy_neighborhood_check(s, eps, 0.5, 1);
        CHECK(rep.holds(0.05));
        CHECK(rep.tfc.size() == 10);
    }
}

TEST_CASE("sweep on an all-zero suite flags every datum as skipped") {
    SweepSettings st;
    st.alphas = {1.0};
    st.levels = {160};
    st.T = 0.5;
    const auto rep = theorem_ratio_sweep(st, [](double) {
        return std::vector<NamedData>{{"zero", [](const WaveProblem& p) { return WaveData::zero(p); }}};
    });
    CHECK(rep.records.empty());
    CHECK(rep.all_skipped());
}

TEST_CASE("sweep on a single MMS datum: bounded, stable ratios") {
    SweepSettings st;
    st.alphas = {1.0};
    st.levels = {160, 320};
    st.T = 1.0;
    const auto rep = theorem_ratio_sweep(st, [](double) {
        return std::vector<NamedData>{
            {"mms", [](const WaveProblem& p) { return manufactured_problem(CatalogEntry::WdcPolynomial, p).data; }}};
    });
    REQUIRE(rep.summaries.size() == 1);
    const auto& a = rep.summaries[0];
    CHECK(a.all_finite);
    CHECK(a.theta_stability <= 0.10);
    CHECK(a.g_stability <= 0.10);
    CHECK(a.theta_below_g_everywhere);
}

TEST_CASE("sweep on a (1 - x)^2-type datum: Theta / N0 shrinks with eps") {
    SweepSettings st;
    st.alphas = {1.0};
    st.levels = {320};
    st.T = 0.5;
    const auto rep = theorem_ratio_sweep(st, [](double) {
        return std::vector<NamedData>{{"square", [](const WaveProblem& p) {
                                           return WaveData::from_functions(
                                               p, [](double, double x) { return 2.0 - 4.0 * x; },
                                               [](double x) { return (1 - x) * (1 - x); }, [](double) { return 0.0; });
                                       }}};
    });
    std::vector<double> ratios;
    for (const auto& r : rep.records) {
        ratios.push_back(r.theta_ratio);
    }
    REQUIRE(ratios.size() == 4);
    for (std::size_t i = 1; i < ratios.size(); ++i) {
        CHECK(ratios[i] < ratios[i - 1]);
    }
}
