#include "degwave/campaigns.hpp"
#include "degwave/config.hpp"
#include "degwave/errors.hpp"
#include "degwave/io.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

using namespace degwave;
using nlohmann::json;

namespace {

std::string config_error(const json& doc) {
    try {
        ExperimentConfig::from_json(doc);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

bool contains(const std::string& s, const std::string& what) {
    return s.find(what) != std::string::npos;
}

} // namespace

TEST_CASE("defaults validate and round-trip through JSON") {
    const ExperimentConfig c;
    CHECK_NOTHROW(c.validate());
    const auto back = ExperimentConfig::from_json(c.to_json());
    CHECK(back.to_json() == c.to_json());
    CHECK(back.hash() == c.hash());
    CHECK(c.hash().size() == 16);
}

TEST_CASE("hash follows the content") {
    ExperimentConfig a;
    ExperimentConfig b;
    b.suite.seed += 1;
    CHECK(a.hash() != b.hash());
}

TEST_CASE("config errors carry the field path") {
    CHECK(contains(config_error({{"epsilon0", 1.5}}), "epsilon0"));
    CHECK(contains(config_error({{"epsilons", {0.4, 0.7}}}), "epsilons[1]"));
    CHECK(contains(config_error({{"alphas", {0.5, 2.0}}}), "alphas[1]"));
    CHECK(contains(config_error({{"suite", {{"sede", 3}}}}), "suite.sede"));
    CHECK(contains(config_error({{"multiplier", {{"delta", "big"}}}}), "multiplier.delta"));
    CHECK(contains(config_error({{"duality", {{"data", {"regular", "bogus"}}}}}), "duality.data[1]"));
    CHECK(contains(config_error({{"convergence", {{"cases", {{{"entry", "sdc-linear"}, {"alpha", 0.5}}}}}}}),
                   "convergence.cases[0].entry"));
}

TEST_CASE("under-resolved neighbourhood names the minimum mesh") {
    const std::string e = config_error({{"levels", {128, 256}}});
    CHECK(contains(e, "levels"));
    CHECK(contains(e, "160"));
    CHECK(contains(config_error({{"multiplier", {{"cells", 32}}}}), "multiplier.cells"));
}

TEST_CASE("config files accept comments") {
    const auto path = std::filesystem::temp_directory_path() / "degwave_cfg_test.json";
    {
        std::ofstream out(path);
        out << "{\n  // fewer samples\n  \"embedding\": {\"samples\": 5}\n}\n";
    }
    CHECK(ExperimentConfig::load(path.string()).embedding.samples == 5);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(ExperimentConfig::load("/nonexistent/cfg.json"), ConfigError);
}

TEST_CASE("number formatting and CSV quoting") {
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(format_number(2.0) == "2");
    CHECK(format_number(std::nan("")) == "nan");
    CHECK(format_number(-INFINITY) == "-inf");
    CsvTable t({"a", "b"});
    t.add_row({"x,y", "say \"hi\""});
    CHECK(t.str() == "a,b\n\"x,y\",\"say \"\"hi\"\"\"\n");
    CHECK_THROWS_AS(t.add_row({"1"}), ArgumentError);
}

TEST_CASE("campaign output is independent of the worker count") {
    ExperimentConfig c;
    c.embedding.samples = 5;
    c.embedding.cells = 64;
    c.workers = 1;
    const auto one = run_embedding(c);
    c.workers = 3;
    const auto three = run_embedding(c);
    CHECK(one.files.at("embedding.csv").str() == three.files.at("embedding.csv").str());
    CHECK(one.ok());
}

TEST_CASE("report embeds hash and version") {
    ExperimentConfig c;
    c.embedding.samples = 2;
    c.embedding.cells = 32;
    const auto dir = std::filesystem::temp_directory_path() / "degwave_report_test";
    std::filesystem::remove_all(dir);
    CHECK(write_report(c, {run_embedding(c)}, dir, "test") == 0);
    std::ifstream in(dir / "report.json");
    const json r = json::parse(in);
    CHECK(r["config_hash"] == c.hash());
    CHECK(r["version"] == version_string());
    CHECK(r["seed"] == c.suite.seed);
    CHECK(r["campaigns"]["verify-embedding"]["ok"] == true);
    CHECK(std::filesystem::exists(dir / "embedding.csv"));
    std::filesystem::remove_all(dir);
}

TEST_CASE("solve campaign writes traces") {
    ExperimentConfig c;
    SolveOptions o;
    o.cells = 32;
    o.steps = 32;
    const auto r = run_solve(c, o);
    CHECK(r.ok());
    CHECK(r.files.count("traces/energy.csv") == 1);
    CHECK(r.files.count("traces/trace.csv") == 1);
    o.data = "suite:2";
    o.alpha = 1.5;
    CHECK(run_solve(c, o).ok());
    o.data = "suite:x";
    CHECK_THROWS_AS(run_solve(c, o), ConfigError);
}

TEST_CASE("hash ignores output location and worker count") {
    ExperimentConfig a;
    ExperimentConfig b;
    b.output = "elsewhere";
    b.workers = 7;
    CHECK(a.hash() == b.hash());
}
