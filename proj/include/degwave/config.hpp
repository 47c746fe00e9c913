#pragma once

// Experiment configuration: a single JSON document with nested tables. Every
// key is optional; missing keys take the defaults below (mirrored in
// configs/default.json). Unknown keys are rejected with their field path.

#include "degwave/elliptic.hpp"
#include "degwave/random_data.hpp"
#include "degwave/transposition.hpp"
#include "degwave/wave.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace degwave {

struct ConvergenceCase {
    CatalogEntry entry = CatalogEntry::WdcPolynomial;
    double alpha = 1.0;
};

struct ExperimentConfig {
    // Shared by the theorem sweeps.
    std::vector<double> alphas{0.5, 1.0, 1.5};
    double T = 2.0;
    std::vector<std::size_t> levels{256, 512};
    double steps_per_cell = 1.0;
    Scheme scheme = Scheme::NewmarkAvgAccel;
    MassKind mass = MassKind::Consistent;
    std::vector<double> epsilons{0.4, 0.2, 0.1, 0.05};
    double epsilon0 = 0.5;
    SuiteSettings suite;
    std::size_t workers = 1;
    std::string output = "degwave-out";

    struct Hidden {
        std::vector<std::size_t> levels{128, 256};
    } hidden;

    struct Convergence {
        std::vector<ConvergenceCase> cases{{CatalogEntry::WdcPolynomial, 1.0}, {CatalogEntry::SdcLinear, 1.5}};
        std::vector<std::size_t> levels{64, 128, 256};
        double T = 1.0;
        double steps_per_cell = 1.0;
    } convergence;

    struct Energy {
        double alpha = 1.0;
        double T = 4.0;
        std::size_t cells = 256;
        std::size_t steps = 256;
        double epsilon = 0.1;
    } energy;

    struct Embedding {
        std::vector<double> alphas{0.5, 1.0, 1.5};
        std::vector<double> a_values{0.25, 0.5};
        std::size_t samples = 100;
        std::size_t cells = 256;
        std::size_t modes = 8;
    } embedding;

    struct Multiplier {
        /// "fixed" uses delta and gamma; "from-epsilon" sets delta = epsilon / 2, gamma = delta / 2.
        std::string policy = "fixed";
        double delta = 0.1;
        double gamma = 0.05;
        double epsilon = 0.3;
        std::vector<double> alphas{0.5, 1.0};
        std::size_t cells = 128;
        double T = 1.0;
        std::size_t profiles = 20;
        std::size_t rho_samples = 10000;
        std::size_t suite_samples = 3;

        double effective_delta() const { return policy == "fixed" ? delta : 0.5 * epsilon; }
        double effective_gamma() const { return policy == "fixed" ? gamma : 0.25 * epsilon; }
    } multiplier;

    struct Duality {
        std::vector<double> alphas{0.5, 1.0, 1.5};
        std::vector<DualityDatum> data{DualityDatum::Regular, DualityDatum::SmoothDual, DualityDatum::PointMass,
                                       DualityDatum::Forced};
        std::vector<std::size_t> levels{64, 128, 256};
        double T = 1.0;
    } duality;

    struct Liminf {
        std::vector<std::string> families{"constant-mms", "decaying-mms", "w-field"};
        double alpha = 1.0;
        double T = 3.141592653589793;
        /// Time horizon of the w-field control case.
        double w_field_T = 2.0;
        std::size_t cells = 256;
        double steps_per_unit = 256.0;
        std::vector<double> epsilons{0.2, 0.1, 0.05};
        LiminfEstimator estimator = LiminfEstimator::TailMinimum;
    } liminf;

    /// ConfigError with the field path of the first inconsistency.
    void validate() const;

    nlohmann::json to_json() const;
    /// Strict parse: unknown keys and ill-typed values raise ConfigError.
    static ExperimentConfig from_json(const nlohmann::json& doc);
    static ExperimentConfig load(const std::string& path);

    /// FNV-1a 64 of the canonical JSON dump without `output` and `workers`,
    /// as 16 hex digits.
    std::string hash() const;
};

std::string_view to_string(MassKind mass);
MassKind mass_from_string(std::string_view name);

} // namespace degwave
