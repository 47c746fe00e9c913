#include "degwave/errors.hpp"
#include "degwave/parallel.hpp"
#include "degwave/random_data.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

using namespace degwave;
using doctest::Approx;

TEST_CASE("splitmix64 reference sequence") {
    // Reference outputs of splitmix64 seeded with 0.
    std::uint64_t s = 0;
    CHECK(splitmix64(s) == 0xe220a8397b1dcdafULL);
    CHECK(splitmix64(s) == 0x6e789e6aa1b965f4ULL);
    CHECK(splitmix64(s) == 0x06c45d188009454fULL);
}

TEST_CASE("derived seeds are distinct and reproducible") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 1000; ++i) {
        seen.insert(derive_seed(42, i));
    }
    CHECK(seen.size() == 1000);
    CHECK(derive_seed(42, 7) == derive_seed(42, 7));
    CHECK(derive_seed(42, 7) != derive_seed(43, 7));
}

TEST_CASE("uniform01 lies in [0, 1)") {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 10000; ++i) {
        const double u = uniform01(rng);
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("modal fields meet the regime conditions") {
    std::mt19937_64 rng(2);
    const auto w = ModalField::random(rng, Regime::WDC, 6, 1.0, true);
    CHECK(std::abs(w(0.0)) < 1e-15);
    CHECK(std::abs(w(1.0)) < 1e-14);
    const auto s = ModalField::random(rng, Regime::SDC, 6, 1.0, false);
    CHECK(std::abs(s(1.0)) < 1e-14);
    CHECK(std::abs(s.derivative(0.0)) < 1e-14);
}

TEST_CASE("modal derivative against central differences") {
    std::mt19937_64 rng(3);
    const auto f = ModalField::random(rng, Regime::WDC, 5, 1.0, true);
    for (double x : {0.1, 0.37, 0.8}) {
        const double h = 1e-6;
        CHECK(f.derivative(x) == Approx((f(x + h) - f(x - h)) / (2 * h)).epsilon(1e-6));
    }
}

TEST_CASE("modal L2 norm") {
    const ModalField f(Regime::WDC, 0.0, {3.0, 4.0});
    CHECK(f.modal_l2_norm() == Approx(std::sqrt(12.5)).epsilon(1e-15));
    CHECK_THROWS_AS(ModalField(Regime::WDC, 1.0, {1.0}).modal_l2_norm(), ArgumentError);
}

TEST_CASE("random suite is seeded and reproducible") {
    SuiteSettings st;
    const auto a = random_suite(Regime::SDC, st);
    const auto b = random_suite(Regime::SDC, st);
    REQUIRE(a.size() == st.size);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].seed == b[i].seed);
        CHECK(a[i].seed == derive_seed(st.seed, i));
        CHECK(a[i].u0.coeffs() == b[i].u0.coeffs());
        CHECK(a[i].u1.modal_l2_norm() == Approx(1.0).epsilon(1e-14));
        CHECK(a[i].amp >= 0.0);
        CHECK(a[i].amp <= 1.0);
    }
    st.include_zero = true;
    const auto z = random_suite(Regime::WDC, st);
    CHECK(z.front().is_zero());
}

TEST_CASE("suite datum on a grid of the wrong regime") {
    SuiteSettings st;
    st.size = 1;
    const auto d = random_suite(Regime::WDC, st).front();
    WaveProblem p;
    p.grid = Grid::uniform(16, Degeneracy(1.5));
    CHECK_THROWS_AS(d.wave_data(p), ConfigError);
}

TEST_CASE("parallel_map keeps order and rethrows") {
    const auto out = parallel_map(100, 4, [](std::size_t i) { return i * i; });
    for (std::size_t i = 0; i < out.size(); ++i) {
        CHECK(out[i] == i * i);
    }
    CHECK_THROWS_AS(parallel_map(10, 3,
                                 [](std::size_t i) {
                                     if (i == 5) {
                                         throw std::runtime_error("boom");
                                     }
                                     return i;
                                 }),
                    std::runtime_error);
}
