#pragma once

// Verification campaigns behind the command line runner. Each campaign is a
// pure function of the configuration; it returns a JSON summary, the list of
// violated properties and the CSV tables it wants written.

#include "degwave/config.hpp"
#include "degwave/io.hpp"

#include <json.hpp>

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace degwave {

struct CampaignResult {
    std::string name;
    nlohmann::json summary = nlohmann::json::object();
    std::vector<std::string> violations;
    /// Output path relative to the output directory, e.g. "traces/energy.csv".
    std::map<std::string, CsvTable> files;

    bool ok() const { return violations.empty(); }
};

/// Options of the single-run `solve` subcommand.
struct SolveOptions {
    /// Catalog name ("zero", "wdc-poly", "sdc-linear") or "suite:<index>".
    std::string data = "wdc-poly";
    double alpha = 1.0;
    std::size_t cells = 128;
    std::size_t steps = 128;
    double T = 1.0;
};

CampaignResult run_solve(const ExperimentConfig& config, const SolveOptions& options);
CampaignResult run_convergence(const ExperimentConfig& config);
CampaignResult run_embedding(const ExperimentConfig& config);
CampaignResult run_energy(const ExperimentConfig& config);
CampaignResult run_multiplier(const ExperimentConfig& config);
CampaignResult run_sweep(const ExperimentConfig& config);
CampaignResult run_duality(const ExperimentConfig& config);
CampaignResult run_liminf(const ExperimentConfig& config);

/// Every campaign above except `solve`, in a fixed order.
std::vector<CampaignResult> run_all(const ExperimentConfig& config);

/// Writes every campaign's tables plus report.json (config hash, version,
/// command, seed, per-campaign summaries) and returns 0 if no property was
/// violated, 1 otherwise.
int write_report(const ExperimentConfig& config, const std::vector<CampaignResult>& results,
                 const std::filesystem::path& output, const std::string& command);

const char* version_string();

} // namespace degwave
