// Command line runner. Exit status: 0 when every checked property holds,
// 1 on a violation, 2 on a configuration or argument error, 3 otherwise.

#include "degwave/campaigns.hpp"
#include "degwave/errors.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>

using namespace degwave;

namespace {

template <class T>
void assign(const std::optional<T>& from, T& to) {
    if (from) {
        to = *from;
    }
}

struct Overrides {
    std::string config_path;
    std::optional<std::string> output;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> workers;
    std::optional<std::string> scheme;
    std::optional<std::string> mass;
};

struct Local {
    std::optional<std::vector<double>> alphas;
    std::optional<std::vector<double>> eps;
    std::optional<std::vector<double>> a_values;
    std::optional<std::vector<std::size_t>> levels;
    std::optional<std::vector<std::string>> families;
    std::optional<std::size_t> samples;
    std::optional<std::size_t> suite_size;
    std::optional<std::size_t> cells;
    std::optional<std::size_t> steps;
    std::optional<double> T;
    std::optional<double> eps0;
    std::optional<double> delta;
    std::optional<double> gamma;
    std::optional<std::string> policy;
    std::optional<std::string> estimator;
    std::string data = "wdc-poly";
    double alpha = 1.0;
};

void print(const CampaignResult& r) {
    std::printf("%-18s %s\n", r.name.c_str(), r.ok() ? "ok" : "VIOLATION");
    for (const auto& v : r.violations) {
        std::printf("  - %s\n", v.c_str());
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical lab for the degenerate wave equation u_tt - (x^alpha u_x)_x = f"};
    app.set_version_flag("--version", std::string(version_string()));
    app.require_subcommand(1);
    app.fallthrough();

    Overrides g;
    app.add_option("-c,--config", g.config_path, "JSON config file (defaults apply to missing keys)");
    app.add_option("-o,--output", g.output, "Output directory");
    app.add_option("--seed", g.seed, "Random suite seed");
    app.add_option("-j,--workers", g.workers, "Worker threads (0 = hardware concurrency)");
    app.add_option("--scheme", g.scheme, "newmark | leapfrog");
    app.add_option("--mass", g.mass, "consistent | lumped");

    Local l;
    const auto list = [](CLI::App* sub, const std::string& name, auto& target, const std::string& help) {
        sub->add_option(name, target, help)->delimiter(',');
    };

    std::function<void(ExperimentConfig&)> apply = [](ExperimentConfig&) {};
    std::function<std::vector<CampaignResult>(const ExperimentConfig&)> run;

    auto* solve = app.add_subcommand("solve", "Single weak solve, writes energy and trace series");
    solve->add_option("--data", l.data, "wdc-poly | sdc-linear | zero | suite:<index>");
    solve->add_option("--alpha", l.alpha, "Degeneracy exponent in (0,2)");
    solve->add_option("--cells", l.cells, "Number of cells");
    solve->add_option("--steps", l.steps, "Number of time steps");
    solve->add_option("--T", l.T, "Final time");
    solve->callback([&] {
        run = [&](const ExperimentConfig& c) {
            SolveOptions o;
            o.data = l.data;
            o.alpha = l.alpha;
            assign(l.cells, o.cells);
            o.steps = l.steps.value_or(o.cells);
            assign(l.T, o.T);
            return std::vector{run_solve(c, o)};
        };
    });

    auto* conv = app.add_subcommand("convergence", "Manufactured-solution refinement study");
    list(conv, "--levels", l.levels, "Comma separated cell counts");
    conv->callback([&] {
        apply = [&](ExperimentConfig& c) {
            assign(l.levels, c.convergence.levels);
        };
        run = [](const ExperimentConfig& c) { return std::vector{run_convergence(c)}; };
    });

    auto* emb = app.add_subcommand("verify-embedding", "Weighted Holder embedding inequalities on random fields");
    list(emb, "--alpha", l.alphas, "Comma separated alphas");
    list(emb, "--a", l.a_values, "Comma separated exponents a in (0,1)");
    emb->add_option("--samples", l.samples, "Random fields per (alpha, a)");
    emb->add_option("--cells", l.cells, "Number of cells");
    emb->callback([&] {
        apply = [&](ExperimentConfig& c) {
            assign(l.alphas, c.embedding.alphas);
            assign(l.a_values, c.embedding.a_values);
            assign(l.samples, c.embedding.samples);
            assign(l.cells, c.embedding.cells);
        };
        run = [](const ExperimentConfig& c) { return std::vector{run_embedding(c)}; };
    });

    auto* en = app.add_subcommand("verify-energy", "Energy conservation and the energy-neighbourhood bound");
    en->add_option("--alpha", l.alpha, "Degeneracy exponent");
    en->add_option("--cells", l.cells, "Number of cells");
    en->add_option("--steps", l.steps, "Number of time steps");
    en->add_option("--T", l.T, "Final time");
    list(en, "--eps", l.eps, "Comma separated epsilons for the MMS runs");
    en->callback([&] {
        apply = [&, en](ExperimentConfig& c) {
            if (en->count("--alpha")) {
                c.energy.alpha = l.alpha;
            }
            assign(l.cells, c.energy.cells);
            assign(l.steps, c.energy.steps);
            assign(l.T, c.energy.T);
            assign(l.eps, c.epsilons);
        };
        run = [](const ExperimentConfig& c) { return std::vector{run_energy(c)}; };
    });

    auto* mul = app.add_subcommand("verify-multiplier", "Multiplier profile properties and the integral identity");
    list(mul, "--alpha", l.alphas, "Comma separated alphas");
    mul->add_option("--delta", l.delta, "Plateau width delta");
    mul->add_option("--gamma", l.gamma, "Ramp width gamma");
    mul->add_option("--policy", l.policy, "fixed | from-epsilon");
    mul->add_option("--cells", l.cells, "Coarse number of cells (the fine run doubles it)");
    mul->add_option("--samples", l.samples, "Random (delta, gamma) profiles");
    mul->callback([&] {
        apply = [&](ExperimentConfig& c) {
            assign(l.alphas, c.multiplier.alphas);
            assign(l.delta, c.multiplier.delta);
            assign(l.gamma, c.multiplier.gamma);
            assign(l.policy, c.multiplier.policy);
            assign(l.cells, c.multiplier.cells);
            assign(l.samples, c.multiplier.profiles);
        };
        run = [](const ExperimentConfig& c) { return std::vector{run_multiplier(c)}; };
    });

    auto* sweep = app.add_subcommand("sweep-theorems", "Theta and G ratio sweeps over the random suite");
    list(sweep, "--alpha", l.alphas, "Comma separated alphas");
    list(sweep, "--eps", l.eps, "Comma separated epsilons");
    list(sweep, "--levels", l.levels, "Comma separated cell counts");
    sweep->add_option("--eps0", l.eps0, "epsilon0 in (0,1)");
    sweep->add_option("--suite-size", l.suite_size, "Random data per alpha");
    sweep->add_option("--T", l.T, "Final time");
    sweep->callback([&] {
        apply = [&](ExperimentConfig& c) {
            assign(l.alphas, c.alphas);
            assign(l.eps, c.epsilons);
            assign(l.levels, c.levels);
            assign(l.eps0, c.epsilon0);
            assign(l.suite_size, c.suite.size);
            assign(l.T, c.T);
        };
        run = [](const ExperimentConfig& c) { return std::vector{run_sweep(c)}; };
    });

    auto* dual = app.add_subcommand("verify-duality", "Transposition duality against smooth bumps");
    list(dual, "--alpha", l.alphas, "Comma separated alphas");
    list(dual, "--levels", l.levels, "Comma separated cell counts (nt = N)");
    dual->callback([&] {
        apply = [&](ExperimentConfig& c) {
            assign(l.alphas, c.duality.alphas);
            assign(l.levels, c.duality.levels);
        };
        run = [](const ExperimentConfig& c) { return std::vector{run_duality(c)}; };
    });

    auto* lim = app.add_subcommand("verify-liminf", "Lower bound on liminf Theta for convergent families");
    list(lim, "--family", l.families, "constant-mms | decaying-mms | w-field | zero");
    list(lim, "--eps", l.eps, "Comma separated decreasing epsilons");
    lim->add_option("--estimator", l.estimator, "tail-min | richardson");
    lim->add_option("--cells", l.cells, "Number of cells");
    lim->callback([&] {
        apply = [&](ExperimentConfig& c) {
            assign(l.families, c.liminf.families);
            assign(l.eps, c.liminf.epsilons);
            if (l.estimator) {
                c.liminf.estimator = liminf_estimator_from_string(*l.estimator);
            }
            assign(l.cells, c.liminf.cells);
        };
        run = [](const ExperimentConfig& c) { return std::vector{run_liminf(c)}; };
    });

    auto* all = app.add_subcommand("report-all", "Every campaign except solve");
    all->callback([&] { run = [](const ExperimentConfig& c) { return run_all(c); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    std::string command = "degwave";
    for (int i = 1; i < argc; ++i) {
        command += ' ';
        command += argv[i];
    }

    try {
        ExperimentConfig c = g.config_path.empty() ? ExperimentConfig{} : ExperimentConfig::load(g.config_path);
        assign(g.output, c.output);
        assign(g.seed, c.suite.seed);
        assign(g.workers, c.workers);
        if (g.scheme) {
            c.scheme = scheme_from_string(*g.scheme);
        }
        if (g.mass) {
            c.mass = mass_from_string(*g.mass);
        }
        apply(c);
        c.validate();
        const std::vector<CampaignResult> results = run(c);
        for (const auto& r : results) {
            print(r);
        }
        const int code = write_report(c, results, c.output, command);
        std::printf("seed %llu, config %s, report %s/report.json\n", static_cast<unsigned long long>(c.suite.seed),
                    c.hash().c_str(), c.output.c_str());
        return code;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return 2;
    } catch (const ArgumentError& e) {
        std::cerr << "argument error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
