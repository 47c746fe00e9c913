#include "degwave/random_data.hpp"

#include "degwave/errors.hpp"

#include <cmath>
#include <numbers>

namespace degwave {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t suite_seed, std::uint64_t index) {
    std::uint64_t state = suite_seed ^ (0xD1B54A32D192ED03ULL * (index + 1));
    splitmix64(state);
    return splitmix64(state);
}

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

ModalField::ModalField(Regime basis, double poly, std::vector<double> coeffs)
    : basis_(basis), poly_(poly), coeffs_(std::move(coeffs)) {}

ModalField ModalField::random(std::mt19937_64& rng, Regime basis, std::size_t modes, double decay,
                              bool with_poly) {
    const double poly = with_poly ? uniform(rng, -1.0, 1.0) : 0.0;
    std::vector<double> c(modes);
    for (std::size_t k = 0; k < modes; ++k) {
        c[k] = uniform(rng, -1.0, 1.0) * std::pow(static_cast<double>(k + 1), -decay);
    }
    return ModalField(basis, poly, std::move(c));
}

namespace {

double wavenumber(Regime basis, std::size_t k) {
    const double n = static_cast<double>(k + 1);
    return basis == Regime::WDC ? n * std::numbers::pi : (n - 0.5) * std::numbers::pi;
}

} // namespace

double ModalField::operator()(double x) const {
    double s = poly_ * (x - x * x);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        const double w = wavenumber(basis_, k);
        s += coeffs_[k] * (basis_ == Regime::WDC ? std::sin(w * x) : std::cos(w * x));
    }
    return s;
}

double ModalField::derivative(double x) const {
    double s = poly_ * (1.0 - 2.0 * x);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        const double w = wavenumber(basis_, k);
        s += coeffs_[k] * w * (basis_ == Regime::WDC ? std::cos(w * x) : -std::sin(w * x));
    }
    return s;
}

double ModalField::modal_l2_norm() const {
    if (poly_ != 0.0) {
        throw ArgumentError("modal_l2_norm needs a field without polynomial part");
    }
    // Both bases are orthogonal on (0, 1) with squared norm 1/2.
    double s = 0.0;
    for (double c : coeffs_) {
        s += 0.5 * c * c;
    }
    return std::sqrt(s);
}

ModalField ModalField::scaled(double c) const {
    std::vector<double> k = coeffs_;
    for (double& v : k) {
        v *= c;
    }
    return ModalField(basis_, poly_ * c, std::move(k));
}

double SuiteDatum::g(double t) const {
    return amp * std::cos(omega * t + phase);
}

double SuiteDatum::f(double t, double x) const {
    return g(t) * h(x);
}

bool SuiteDatum::is_zero() const {
    auto zero = [](const ModalField& m) {
        if (m.poly() != 0.0) {
            return false;
        }
        for (double c : m.coeffs()) {
            if (c != 0.0) {
                return false;
            }
        }
        return true;
    };
    return zero(u0) && zero(u1) && (amp == 0.0 || zero(h));
}

WaveData SuiteDatum::wave_data(const WaveProblem& problem) const {
    if (problem.grid->regime() != u0.basis()) {
        throw ConfigError("suite datum " + id + " was drawn for the " + std::string(to_string(u0.basis())) +
                          " regime");
    }
    // Copies keep the returned data valid after this datum is gone.
    return WaveData::from_functions(
        problem, [d = *this](double t, double x) { return d.f(t, x); }, [m = u0](double x) { return m(x); },
        [m = u1](double x) { return m(x); });
}

std::vector<SuiteDatum> random_suite(Regime regime, const SuiteSettings& settings) {
    if (settings.modes == 0) {
        throw ConfigError("suite.modes must be positive");
    }
    std::vector<SuiteDatum> out;
    std::size_t index = 0;
    if (settings.include_zero) {
        SuiteDatum z;
        z.id = "zero";
        z.u0 = ModalField(regime, 0.0, {});
        z.u1 = ModalField(regime, 0.0, {});
        z.h = ModalField(regime, 0.0, {});
        out.push_back(std::move(z));
    }
    for (; index < settings.size; ++index) {
        SuiteDatum d;
        d.seed = derive_seed(settings.seed, index);
        d.id = "s" + std::to_string(index);
        std::mt19937_64 rng(d.seed);
        d.u0 = ModalField::random(rng, regime, settings.modes, 2.0, true);
        const ModalField u1 = ModalField::random(rng, regime, settings.modes, 1.0, false);
        const double n = u1.modal_l2_norm();
        d.u1 = n > 0.0 ? u1.scaled(1.0 / n) : u1;
        d.h = ModalField::random(rng, regime, settings.modes, 2.0, false);
        d.amp = uniform(rng, 0.0, 1.0);
        d.omega = uniform(rng, 0.5, 3.0);
        d.phase = uniform(rng, 0.0, 2.0 * std::numbers::pi);
        out.push_back(std::move(d));
    }
    return out;
}

SpaceField random_smooth_field(std::mt19937_64& rng, const GridPtr& grid, std::size_t modes) {
    const ModalField m = ModalField::random(rng, grid->regime(), modes, 1.5, true);
    return SpaceField::interpolate(grid, [&](double x) { return m(x); }, BoundaryTags::h1_alpha(grid->regime()));
}

} // namespace degwave
