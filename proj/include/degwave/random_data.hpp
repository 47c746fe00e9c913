#pragma once

// Seeded random data for the property suites. Every datum is a closed-form
// function of x (and t), so the same datum can be put on any grid and
// refinement studies compare like with like.

#include "degwave/wave.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace degwave {

/// One step of the splitmix64 generator; advances `state`.
std::uint64_t splitmix64(std::uint64_t& state);

/// Seed of datum `index` in a suite seeded with `suite_seed`.
std::uint64_t derive_seed(std::uint64_t suite_seed, std::uint64_t index);

/// Uniform on [0, 1) built from the top 53 bits, identical on every platform
/// (std::uniform_real_distribution is not).
double uniform01(std::mt19937_64& rng);
double uniform(std::mt19937_64& rng, double lo, double hi);

/// c (x - x^2) + sum_k a_k b_k(x) with a basis that meets the regime's
/// conditions: b_k = sin(k pi x) in WDC, cos((k - 1/2) pi x) in SDC.
class ModalField {
public:
    ModalField() = default;
    ModalField(Regime basis, double poly, std::vector<double> coeffs);

    /// Coefficients uniform in [-1, 1] scaled by k^-decay; the polynomial
    /// weight is uniform in [-1, 1] when `with_poly` is set.
    static ModalField random(std::mt19937_64& rng, Regime basis, std::size_t modes, double decay,
                             bool with_poly);

    double operator()(double x) const;
    double derivative(double x) const;

    Regime basis() const noexcept { return basis_; }
    double poly() const noexcept { return poly_; }
    const std::vector<double>& coeffs() const noexcept { return coeffs_; }

    /// Exact L^2(0,1) norm of the modal part (poly must be zero).
    double modal_l2_norm() const;
    ModalField scaled(double c) const;

private:
    Regime basis_ = Regime::WDC;
    double poly_ = 0.0;
    std::vector<double> coeffs_;
};

/// u0 = modal field with polynomial part, u1 = modal field of unit L^2 norm,
/// f(t, x) = amp cos(omega t + phase) h(x).
struct SuiteDatum {
    std::string id;
    std::uint64_t seed = 0;
    ModalField u0;
    ModalField u1;
    ModalField h;
    double amp = 0.0;
    double omega = 0.0;
    double phase = 0.0;

    double g(double t) const;
    double f(double t, double x) const;
    bool is_zero() const;

    WaveData wave_data(const WaveProblem& problem) const;
};

struct SuiteSettings {
    std::uint64_t seed = 20240611;
    std::size_t size = 20;
    std::size_t modes = 6;
    /// Prepend an all-zero datum (exercises the skip path of the sweeps).
    bool include_zero = false;
};

std::vector<SuiteDatum> random_suite(Regime regime, const SuiteSettings& settings);

/// Random smooth H^1_alpha member interpolated on `grid`.
SpaceField random_smooth_field(std::mt19937_64& rng, const GridPtr& grid, std::size_t modes = 8);

} // namespace degwave
