#include "oracles.hpp"

#include "degwave/errors.hpp"
#include "degwave/multiplier.hpp"
#include "degwave/random_data.hpp"

#include <doctest.h>

#include <cmath>

using namespace degwave;
using doctest::Approx;

TEST_CASE("profile values at the marked points") {
    const auto r = MultiplierProfile::build(0.1, 0.05);
    CHECK(r.value(0.5) == 0.0);
    CHECK(r.value(0.85) == Approx(oracle::rho_at_0_85).epsilon(1e-14));
    CHECK(std::abs(r.value(0.85)) < 1e-14);
    CHECK(r.value(0.9) == Approx(oracle::rho_at_0_9).epsilon(1e-13));
    CHECK(r.value(1.0) == Approx(oracle::rho_at_1).epsilon(1e-14));
    CHECK(r.d1(0.95) == Approx(oracle::rho_max_d1).epsilon(1e-14));
    CHECK(r.junction_mismatch() <= 1e-12);
}

TEST_CASE("profile curvature on the quadratic piece") {
    const auto r = MultiplierProfile::build(0.2, 0.1);
    CHECK(r.d2(0.75) == Approx(oracle::rho_d2_quadratic_delta_0_2_gamma_0_1).epsilon(1e-13));
    CHECK(r.d2(0.9) == 0.0);
    CHECK(r.d2(0.3) == 0.0);
}

TEST_CASE("profile parameter ordering") {
    CHECK_THROWS_AS(MultiplierProfile::build(0.1, 0.1), DomainError);
    CHECK_THROWS_AS(MultiplierProfile::build(0.1, 0.2), DomainError);
    CHECK_THROWS_AS(MultiplierProfile::build(0.6, 0.5), DomainError);
    CHECK_THROWS_AS(MultiplierProfile::build(0.1, 0.0), DomainError);
}

TEST_CASE("property check on the reference profile") {
    const auto rep = rho_property_check(MultiplierProfile::build(0.1, 0.05), 10000);
    CHECK(rep.ok());
    CHECK(rep.max_d1 == Approx(oracle::rho_max_d1).epsilon(1e-14));
    CHECK(rep.d1_bound == Approx(oracle::rho_d1_bound).epsilon(1e-14));
    CHECK(rep.max_d1 <= rep.d1_bound);
    CHECK(rep.min_value >= 0.0);
    CHECK(rep.max_decrease <= 0.0);
}

TEST_CASE("property: random profiles satisfy smoothness, monotonicity and the slope bound") {
    std::mt19937_64 rng(derive_seed(5, 0));
    for (int i = 0; i < 50; ++i) {
        const double delta = uniform(rng, 0.01, 0.7);
        const double gamma = uniform(rng, 0.01, 0.99) * std::min(delta, 1.0 - delta);
        const auto p = MultiplierProfile::build(delta, gamma);
        const auto rep = rho_property_check(p, 10000);
        CHECK(rep.ok());
        CHECK(rep.junction_mismatch <= 1e-12);
        CHECK(p.value(p.left_junction()) == 0.0);
    }
}

namespace {

WaveProblem make(double alpha, std::size_t n, double T) {
    WaveProblem p;
    p.grid = Grid::uniform(n, Degeneracy(alpha));
    p.nt = n;
    p.T = T;
    return p;
}

} // namespace

TEST_CASE("identity on the zero solution") {
    const auto p = make(0.5, 128, 1.0);
    const auto d = WaveData::zero(p);
    CHECK(multiplier_identity_residual(solve_weak(p, d), d, MultiplierProfile::build(0.1, 0.05)) == 0.0);
}

TEST_CASE("identity terms for the static profile 1 - x") {
    const auto p = make(1.0, 256, 1.0);
    const auto d = WaveData::from_functions(
        p, [](double, double) { return 1.0; }, [](double x) { return 1.0 - x; }, [](double) { return 0.0; });
    const auto s = solve_weak(p, d);
    const auto t = multiplier_identity_terms(s, d, MultiplierProfile::build(0.1, 0.05));
    CHECK(t.gradient == Approx(oracle::multiplier_static_gradient).epsilon(1e-9));
    CHECK(t.mixed == Approx(oracle::multiplier_static_mixed).epsilon(1e-9));
    CHECK(t.trace == Approx(oracle::multiplier_static_trace).epsilon(1e-9));
    CHECK(t.degeneracy == Approx(oracle::multiplier_static_degeneracy).epsilon(1e-9));
    CHECK(t.source_gradient == Approx(oracle::multiplier_static_source_gradient).epsilon(1e-9));
    CHECK(t.source_value == Approx(oracle::multiplier_static_source_value).epsilon(1e-9));
    CHECK(std::abs(t.final_gradient) < 1e-12);
    CHECK(std::abs(t.initial_gradient) < 1e-12);
    CHECK(t.residual() <= 1e-3);
}

TEST_CASE("identity residual on the polynomial MMS entry decreases under refinement") {
    const auto rho = MultiplierProfile::build(0.1, 0.05);
    std::vector<double> r;
    for (std::size_t n : {128, 256}) {
        const auto p = make(1.0, n, 1.0);
        const auto m = manufactured_problem(CatalogEntry::WdcPolynomial, p);
        r.push_back(multiplier_identity_residual(solve_weak(p, m.data), m.data, rho));
    }
    CHECK(r[0] <= 0.05);
    CHECK(r[1] < r[0]);
}

TEST_CASE("under-resolved support is a configuration error") {
    const auto p = make(1.0, 32, 1.0);
    const auto d = WaveData::zero(p);
    CHECK_THROWS_AS(multiplier_identity_terms(solve_weak(p, d), d, MultiplierProfile::build(0.1, 0.05)), ConfigError);
}
