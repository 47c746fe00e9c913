#include "oracles.hpp"

#include "degwave/errors.hpp"
#include "degwave/random_data.hpp"
#include "degwave/spaces.hpp"

#include <doctest.h>

#include <cmath>

using namespace degwave;
using doctest::Approx;

TEST_CASE("cell weight integrals match closed forms") {
    const double h = 1.0 / 64.0;
    CHECK(cell_weight_integral(0.0, h, 1.0) == Approx(oracle::cell_weight_0_h_alpha1_over_h2 * h * h).epsilon(1e-14));
    CHECK(cell_weight_integral(0.0, 1.0, 0.5) == Approx(oracle::cell_weight_0_1_alpha_half).epsilon(1e-14));
    CHECK(cell_weight_integral(0.5, 1.0, 1.0) == Approx(oracle::cell_weight_half_1_alpha1).epsilon(1e-14));
    CHECK_THROWS_AS(cell_weight_integral(0.6, 0.5, 1.0), DomainError);
    CHECK_THROWS_AS(cell_weight_integral(-0.1, 0.5, 1.0), DomainError);
}

TEST_CASE("degeneracy regime follows alpha") {
    CHECK(Degeneracy(0.5).regime() == Regime::WDC);
    CHECK(Degeneracy(0.999).regime() == Regime::WDC);
    CHECK(Degeneracy(1.0).regime() == Regime::SDC);
    CHECK(Degeneracy(1.5).regime() == Regime::SDC);
    CHECK_THROWS_AS(Degeneracy(0.0), DomainError);
    CHECK_THROWS_AS(Degeneracy(2.0), DomainError);
}

TEST_CASE("grid weights sum to the full integral") {
    for (double alpha : {0.3, 1.0, 1.7}) {
        const auto g = Grid::graded(37, Degeneracy(alpha), 2.0);
        double s = 0.0;
        for (double w : g->cell_weights()) {
            s += w;
        }
        CHECK(s == Approx(1.0 / (alpha + 1.0)).epsilon(1e-13));
    }
}

TEST_CASE("weighted H1 norm of linear and quadratic profiles") {
    const auto g = Grid::uniform(512, Degeneracy(1.0));
    CHECK(h1_alpha_norm(SpaceField::zeros(g)) == 0.0);
    const auto lin = SpaceField::interpolate(g, [](double x) { return 1.0 - x; });
    // P1 reproduces a linear profile, so the value is exact.
    CHECK(h1_alpha_norm(lin) == Approx(oracle::h1a_norm_one_minus_x_alpha1).epsilon(1e-13));
    const auto quad = SpaceField::interpolate(g, [](double x) { return x - x * x; });
    CHECK(h1_alpha_norm(quad) == Approx(oracle::h1a_norm_poly_alpha1).epsilon(1e-5));
}

TEST_CASE("field boundary tags") {
    const auto g = Grid::uniform(16, Degeneracy(0.5));
    const auto ok = SpaceField::interpolate(g, [](double x) { return x - x * x; }, BoundaryTags::h1_alpha(Regime::WDC));
    CHECK(ok.satisfies_tags());
    std::vector<double> vals(g->size(), 0.0);
    vals.front() = 0.25;
    CHECK_FALSE(SpaceField(g, vals, BoundaryTags::h1_alpha(Regime::WDC)).satisfies_tags());
    CHECK(SpaceField(g, vals, BoundaryTags::h1_alpha(Regime::SDC)).satisfies_tags());
    // interpolate() enforces the tags it is given.
    const auto forced = SpaceField::interpolate(g, [](double x) { return 1.0 - x * x; }, BoundaryTags::h1_alpha(Regime::WDC));
    CHECK(forced[0] == 0.0);
}

TEST_CASE("holder embedding on 1 - x with a = 1/4") {
    const auto g = Grid::uniform(256, Degeneracy(1.0));
    const auto u = SpaceField::interpolate(g, [](double x) { return 1.0 - x; });
    const HolderReport r = holder_embedding_check(u, 0.25);
    CHECK(r.sup_norm == Approx(oracle::holder_sup_one_minus_x_a_quarter).epsilon(1e-14));
    CHECK(r.seminorm == Approx(oracle::holder_seminorm_one_minus_x_a_quarter).epsilon(1e-12));
    CHECK(r.constant_A1 == Approx(oracle::embedding_A1_alpha1_a_quarter).epsilon(1e-14));
    CHECK(r.constant_A2 == Approx(oracle::embedding_A2_alpha1_a_quarter).epsilon(1e-14));
    CHECK(r.constant_A2 * r.h1_alpha_norm ==
          Approx(oracle::embedding_A2_alpha1_a_quarter * oracle::h1a_norm_one_minus_x_alpha1).epsilon(1e-12));
    CHECK(r.holds());
    CHECK_THROWS_AS(holder_embedding_check(u, 1.0), DomainError);
    CHECK_THROWS_AS(holder_embedding_check(u, 0.0), DomainError);
}

TEST_CASE("holder embedding of the zero field") {
    const auto g = Grid::uniform(32, Degeneracy(0.5));
    const HolderReport r = holder_embedding_check(SpaceField::zeros(g), 0.5);
    CHECK(r.sup_norm == 0.0);
    CHECK(r.seminorm == 0.0);
    CHECK(r.slack_A1 == 0.0);
    CHECK(r.slack_A2 == 0.0);
}

TEST_CASE("property: embedding inequalities hold on random fields") {
    std::mt19937_64 rng(derive_seed(11, 0));
    for (double alpha : {0.5, 1.0, 1.5}) {
        const auto g = Grid::uniform(128, Degeneracy(alpha));
        for (double a : {0.1, 0.25, 0.5, 0.9}) {
            for (int k = 0; k < 20; ++k) {
                const HolderReport r = holder_embedding_check(random_smooth_field(rng, g), a);
                CHECK(r.holds(1e-9));
            }
        }
    }
}

TEST_CASE("integrals over partial intervals split cells exactly") {
    const auto g = Grid::uniform(10, Degeneracy(1.0));
    const auto u = SpaceField::interpolate(g, [](double x) { return 1.0 - x; });
    // \int_{0.83}^{1} (1-x)^2 = 0.17^3 / 3 for a linear field, whatever the cell boundaries.
    CHECK(integrate_square(*g, u.values(), 0.83, 1.0) == Approx(std::pow(0.17, 3) / 3.0).epsilon(1e-13));
    CHECK(integrate_weighted_gradient_square(*g, u.values(), 0.83, 1.0) ==
          Approx(0.5 * (1.0 - 0.83 * 0.83)).epsilon(1e-13));
    CHECK(integrate_gradient_square(*g, u.values(), 0.83, 1.0) == Approx(0.17).epsilon(1e-13));
}
