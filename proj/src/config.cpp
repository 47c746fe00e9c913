#include "degwave/config.hpp"

#include "degwave/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace degwave {

using nlohmann::json;

std::string_view to_string(MassKind mass) {
    return mass == MassKind::Consistent ? "consistent" : "lumped";
}

MassKind mass_from_string(std::string_view name) {
    if (name == "consistent") {
        return MassKind::Consistent;
    }
    if (name == "lumped") {
        return MassKind::Lumped;
    }
    throw ConfigError("unknown mass kind '" + std::string(name) + "'");
}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ConfigError(path + ": " + what);
}

// Reads the keys of one JSON object and rejects anything it was not asked about.
class Table {
public:
    Table(const json& node, std::string path) : node_(node), path_(std::move(path)) {
        if (!node_.is_object()) {
            fail(path_, "expected a table");
        }
    }

    std::string at(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    const json* find(const std::string& key) {
        seen_.insert(key);
        auto it = node_.find(key);
        return it == node_.end() ? nullptr : &*it;
    }

    void number(const std::string& key, double& out) {
        if (const json* v = find(key)) {
            if (!v->is_number()) {
                fail(at(key), "expected a number");
            }
            out = v->get<double>();
        }
    }

    void count(const std::string& key, std::size_t& out) {
        if (const json* v = find(key)) {
            if (!v->is_number_integer() || v->get<long long>() < 0) {
                fail(at(key), "expected a non-negative integer");
            }
            out = v->get<std::size_t>();
        }
    }

    void seed(const std::string& key, std::uint64_t& out) {
        if (const json* v = find(key)) {
            if (!v->is_number_unsigned() && !(v->is_number_integer() && v->get<long long>() >= 0)) {
                fail(at(key), "expected a non-negative integer seed");
            }
            out = v->get<std::uint64_t>();
        }
    }

    void flag(const std::string& key, bool& out) {
        if (const json* v = find(key)) {
            if (!v->is_boolean()) {
                fail(at(key), "expected true or false");
            }
            out = v->get<bool>();
        }
    }

    void text(const std::string& key, std::string& out) {
        if (const json* v = find(key)) {
            if (!v->is_string()) {
                fail(at(key), "expected a string");
            }
            out = v->get<std::string>();
        }
    }

    void numbers(const std::string& key, std::vector<double>& out) {
        if (const json* v = find(key)) {
            if (!v->is_array()) {
                fail(at(key), "expected a list of numbers");
            }
            out.clear();
            for (std::size_t i = 0; i < v->size(); ++i) {
                if (!(*v)[i].is_number()) {
                    fail(at(key) + "[" + std::to_string(i) + "]", "expected a number");
                }
                out.push_back((*v)[i].get<double>());
            }
        }
    }

    void counts(const std::string& key, std::vector<std::size_t>& out) {
        if (const json* v = find(key)) {
            if (!v->is_array()) {
                fail(at(key), "expected a list of integers");
            }
            out.clear();
            for (std::size_t i = 0; i < v->size(); ++i) {
                const json& e = (*v)[i];
                if (!e.is_number_integer() || e.get<long long>() <= 0) {
                    fail(at(key) + "[" + std::to_string(i) + "]", "expected a positive integer");
                }
                out.push_back(e.get<std::size_t>());
            }
        }
    }

    void texts(const std::string& key, std::vector<std::string>& out) {
        if (const json* v = find(key)) {
            if (!v->is_array()) {
                fail(at(key), "expected a list of strings");
            }
            out.clear();
            for (std::size_t i = 0; i < v->size(); ++i) {
                if (!(*v)[i].is_string()) {
                    fail(at(key) + "[" + std::to_string(i) + "]", "expected a string");
                }
                out.push_back((*v)[i].get<std::string>());
            }
        }
    }

    template <class Fn>
    void table(const std::string& key, Fn&& fn) {
        if (const json* v = find(key)) {
            Table sub(*v, at(key));
            fn(sub);
            sub.finish();
        }
    }

    // Converts a string through `parse`, reporting its ConfigError under this key.
    template <class T, class Parse>
    void choice(const std::string& key, T& out, Parse&& parse) {
        std::string s;
        text(key, s);
        if (!s.empty()) {
            try {
                out = parse(s);
            } catch (const ConfigError& e) {
                fail(at(key), e.what());
            }
        }
    }

    void finish() const {
        for (auto it = node_.begin(); it != node_.end(); ++it) {
            if (!seen_.count(it.key())) {
                fail(at(it.key()), "unknown key");
            }
        }
    }

private:
    const json& node_;
    std::string path_;
    std::set<std::string> seen_;
};

void check_alpha(const std::string& path, double a) {
    if (!(a > 0.0 && a < 2.0)) {
        fail(path, "alpha must lie in (0, 2), got " + std::to_string(a));
    }
}

void check_positive(const std::string& path, double v) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        fail(path, "must be positive");
    }
}

void check_resolved(const std::string& path, const std::vector<std::size_t>& levels, const std::vector<double>& eps) {
    for (std::size_t n : levels) {
        for (double e : eps) {
            if (static_cast<double>(n) * e < 8.0 - 1e-9) {
                std::ostringstream msg;
                msg << "N = " << n << " resolves (1 - " << e << ", 1) with fewer than 8 cells; minimum mesh is N = "
                    << static_cast<std::size_t>(std::ceil(8.0 / e - 1e-9));
                fail(path, msg.str());
            }
        }
    }
}

} // namespace

void ExperimentConfig::validate() const {
    if (alphas.empty()) {
        fail("alphas", "at least one value required");
    }
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        check_alpha("alphas[" + std::to_string(i) + "]", alphas[i]);
    }
    check_positive("T", T);
    check_positive("steps_per_cell", steps_per_cell);
    if (levels.empty()) {
        fail("levels", "at least one mesh size required");
    }
    if (!(epsilon0 > 0.0 && epsilon0 < 1.0)) {
        fail("epsilon0", "must lie in (0, 1)");
    }
    for (std::size_t i = 0; i < epsilons.size(); ++i) {
        if (!(epsilons[i] > 0.0 && epsilons[i] < epsilon0)) {
            fail("epsilons[" + std::to_string(i) + "]", "every eps must lie in (0, epsilon0)");
        }
    }
    check_resolved("levels", levels, epsilons);
    if (suite.size == 0) {
        fail("suite.size", "must be positive");
    }
    if (suite.modes == 0) {
        fail("suite.modes", "must be positive");
    }
    if (hidden.levels.empty()) {
        fail("hidden.levels", "at least one mesh size required");
    }

    if (convergence.levels.size() < 3) {
        fail("convergence.levels", "at least three refinement levels required");
    }
    for (std::size_t i = 0; i < convergence.cases.size(); ++i) {
        const auto& c = convergence.cases[i];
        const std::string p = "convergence.cases[" + std::to_string(i) + "]";
        check_alpha(p + ".alpha", c.alpha);
        if (c.entry == CatalogEntry::SdcLinear && c.alpha < 1.0) {
            fail(p + ".entry", "sdc-linear needs alpha in [1, 2)");
        }
    }
    check_positive("convergence.T", convergence.T);
    check_positive("convergence.steps_per_cell", convergence.steps_per_cell);

    check_alpha("energy.alpha", energy.alpha);
    check_positive("energy.T", energy.T);
    if (energy.cells < 2 || energy.steps == 0) {
        fail("energy", "cells >= 2 and steps >= 1 required");
    }
    if (!(energy.epsilon > 0.0 && energy.epsilon < epsilon0)) {
        fail("energy.epsilon", "must lie in (0, epsilon0)");
    }

    for (std::size_t i = 0; i < embedding.alphas.size(); ++i) {
        check_alpha("embedding.alphas[" + std::to_string(i) + "]", embedding.alphas[i]);
    }
    for (std::size_t i = 0; i < embedding.a_values.size(); ++i) {
        const double a = embedding.a_values[i];
        if (!(a > 0.0 && a < 1.0)) {
            fail("embedding.a_values[" + std::to_string(i) + "]", "must lie in (0, 1)");
        }
    }
    if (embedding.cells < 2 || embedding.modes == 0) {
        fail("embedding", "cells >= 2 and modes >= 1 required");
    }

    if (multiplier.policy != "fixed" && multiplier.policy != "from-epsilon") {
        fail("multiplier.policy", "expected 'fixed' or 'from-epsilon'");
    }
    {
        const double d = multiplier.effective_delta();
        const double g = multiplier.effective_gamma();
        if (!(d > 0.0 && g > 0.0 && g < d && d + g < 1.0)) {
            fail("multiplier", "need 0 < gamma < delta and delta + gamma < 1");
        }
        if (static_cast<double>(multiplier.cells) * (d + g) < 8.0 - 1e-9) {
            std::ostringstream msg;
            msg << "multiplier support (1 - kappa, 1) needs at least 8 cells; minimum mesh is N = "
                << static_cast<std::size_t>(std::ceil(8.0 / (d + g) - 1e-9));
            fail("multiplier.cells", msg.str());
        }
    }
    for (std::size_t i = 0; i < multiplier.alphas.size(); ++i) {
        check_alpha("multiplier.alphas[" + std::to_string(i) + "]", multiplier.alphas[i]);
    }
    check_positive("multiplier.T", multiplier.T);
    if (multiplier.rho_samples < 2) {
        fail("multiplier.rho_samples", "at least two samples required");
    }

    for (std::size_t i = 0; i < duality.alphas.size(); ++i) {
        check_alpha("duality.alphas[" + std::to_string(i) + "]", duality.alphas[i]);
    }
    if (duality.levels.size() < 2) {
        fail("duality.levels", "at least two refinement levels required");
    }
    check_positive("duality.T", duality.T);

    check_alpha("liminf.alpha", liminf.alpha);
    check_positive("liminf.T", liminf.T);
    check_positive("liminf.w_field_T", liminf.w_field_T);
    check_positive("liminf.steps_per_unit", liminf.steps_per_unit);
    for (std::size_t i = 0; i < liminf.families.size(); ++i) {
        const auto& f = liminf.families[i];
        if (f != "zero" && f != "constant-mms" && f != "decaying-mms" && f != "w-field") {
            fail("liminf.families[" + std::to_string(i) + "]", "unknown family '" + f + "'");
        }
    }
    if (liminf.epsilons.empty()) {
        fail("liminf.epsilons", "at least one value required");
    }
    for (std::size_t i = 0; i < liminf.epsilons.size(); ++i) {
        const double e = liminf.epsilons[i];
        if (!(e > 0.0 && e < 1.0) || (i > 0 && !(e < liminf.epsilons[i - 1]))) {
            fail("liminf.epsilons[" + std::to_string(i) + "]", "must lie in (0, 1) and decrease strictly");
        }
    }
    check_resolved("liminf.cells", {liminf.cells}, liminf.epsilons);
}

json ExperimentConfig::to_json() const {
    json j;
    j["alphas"] = alphas;
    j["T"] = T;
    j["levels"] = levels;
    j["steps_per_cell"] = steps_per_cell;
    j["scheme"] = std::string(to_string(scheme));
    j["mass"] = std::string(to_string(mass));
    j["epsilons"] = epsilons;
    j["epsilon0"] = epsilon0;
    j["suite"] = {{"seed", suite.seed}, {"size", suite.size}, {"modes", suite.modes}, {"include_zero", suite.include_zero}};
    j["workers"] = workers;
    j["output"] = output;
    j["hidden"] = {{"levels", hidden.levels}};
    json cases = json::array();
    for (const auto& c : convergence.cases) {
        cases.push_back({{"entry", std::string(to_string(c.entry))}, {"alpha", c.alpha}});
    }
    j["convergence"] = {{"cases", cases},
                        {"levels", convergence.levels},
                        {"T", convergence.T},
                        {"steps_per_cell", convergence.steps_per_cell}};
    j["energy"] = {{"alpha", energy.alpha},
                   {"T", energy.T},
                   {"cells", energy.cells},
                   {"steps", energy.steps},
                   {"epsilon", energy.epsilon}};
    j["embedding"] = {{"alphas", embedding.alphas},
                      {"a_values", embedding.a_values},
                      {"samples", embedding.samples},
                      {"cells", embedding.cells},
                      {"modes", embedding.modes}};
    j["multiplier"] = {{"policy", multiplier.policy},
                       {"delta", multiplier.delta},
                       {"gamma", multiplier.gamma},
                       {"epsilon", multiplier.epsilon},
                       {"alphas", multiplier.alphas},
                       {"cells", multiplier.cells},
                       {"T", multiplier.T},
                       {"profiles", multiplier.profiles},
                       {"rho_samples", multiplier.rho_samples},
                       {"suite_samples", multiplier.suite_samples}};
    std::vector<std::string> data;
    for (auto d : duality.data) {
        data.emplace_back(to_string(d));
    }
    j["duality"] = {{"alphas", duality.alphas}, {"data", data}, {"levels", duality.levels}, {"T", duality.T}};
    j["liminf"] = {{"families", liminf.families},
                   {"alpha", liminf.alpha},
                   {"T", liminf.T},
                   {"w_field_T", liminf.w_field_T},
                   {"cells", liminf.cells},
                   {"steps_per_unit", liminf.steps_per_unit},
                   {"epsilons", liminf.epsilons},
                   {"estimator", std::string(to_string(liminf.estimator))}};
    return j;
}

ExperimentConfig ExperimentConfig::from_json(const json& doc) {
    ExperimentConfig c;
    Table root(doc, "");
    root.numbers("alphas", c.alphas);
    root.number("T", c.T);
    root.counts("levels", c.levels);
    root.number("steps_per_cell", c.steps_per_cell);
    root.choice("scheme", c.scheme, [](const std::string& s) { return scheme_from_string(s); });
    root.choice("mass", c.mass, [](const std::string& s) { return mass_from_string(s); });
    root.numbers("epsilons", c.epsilons);
    root.number("epsilon0", c.epsilon0);
    root.table("suite", [&](Table& t) {
        t.seed("seed", c.suite.seed);
        t.count("size", c.suite.size);
        t.count("modes", c.suite.modes);
        t.flag("include_zero", c.suite.include_zero);
    });
    root.count("workers", c.workers);
    root.text("output", c.output);
    root.table("hidden", [&](Table& t) { t.counts("levels", c.hidden.levels); });
    root.table("convergence", [&](Table& t) {
        if (const json* cases = t.find("cases")) {
            if (!cases->is_array()) {
                fail(t.at("cases"), "expected a list of tables");
            }
            c.convergence.cases.clear();
            for (std::size_t i = 0; i < cases->size(); ++i) {
                Table ct((*cases)[i], t.at("cases") + "[" + std::to_string(i) + "]");
                ConvergenceCase cc;
                ct.choice("entry", cc.entry, [](const std::string& s) { return catalog_from_string(s); });
                ct.number("alpha", cc.alpha);
                ct.finish();
                c.convergence.cases.push_back(cc);
            }
        }
        t.counts("levels", c.convergence.levels);
        t.number("T", c.convergence.T);
        t.number("steps_per_cell", c.convergence.steps_per_cell);
    });
    root.table("energy", [&](Table& t) {
        t.number("alpha", c.energy.alpha);
        t.number("T", c.energy.T);
        t.count("cells", c.energy.cells);
        t.count("steps", c.energy.steps);
        t.number("epsilon", c.energy.epsilon);
    });
    root.table("embedding", [&](Table& t) {
        t.numbers("alphas", c.embedding.alphas);
        t.numbers("a_values", c.embedding.a_values);
        t.count("samples", c.embedding.samples);
        t.count("cells", c.embedding.cells);
        t.count("modes", c.embedding.modes);
    });
    root.table("multiplier", [&](Table& t) {
        t.text("policy", c.multiplier.policy);
        t.number("delta", c.multiplier.delta);
        t.number("gamma", c.multiplier.gamma);
        t.number("epsilon", c.multiplier.epsilon);
        t.numbers("alphas", c.multiplier.alphas);
        t.count("cells", c.multiplier.cells);
        t.number("T", c.multiplier.T);
        t.count("profiles", c.multiplier.profiles);
        t.count("rho_samples", c.multiplier.rho_samples);
        t.count("suite_samples", c.multiplier.suite_samples);
    });
    root.table("duality", [&](Table& t) {
        t.numbers("alphas", c.duality.alphas);
        std::vector<std::string> names;
        t.texts("data", names);
        if (t.find("data")) {
            c.duality.data.clear();
            for (std::size_t i = 0; i < names.size(); ++i) {
                try {
                    c.duality.data.push_back(duality_datum_from_string(names[i]));
                } catch (const ConfigError& e) {
                    fail(t.at("data") + "[" + std::to_string(i) + "]", e.what());
                }
            }
        }
        t.counts("levels", c.duality.levels);
        t.number("T", c.duality.T);
    });
    root.table("liminf", [&](Table& t) {
        t.texts("families", c.liminf.families);
        t.number("alpha", c.liminf.alpha);
        t.number("T", c.liminf.T);
        t.number("w_field_T", c.liminf.w_field_T);
        t.count("cells", c.liminf.cells);
        t.number("steps_per_unit", c.liminf.steps_per_unit);
        t.numbers("epsilons", c.liminf.epsilons);
        t.choice("estimator", c.liminf.estimator, [](const std::string& s) { return liminf_estimator_from_string(s); });
    });
    root.finish();
    c.validate();
    return c;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(path + ": cannot open config file");
    }
    json doc;
    try {
        doc = json::parse(in, nullptr, true, true);
    } catch (const json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
    return from_json(doc);
}

std::string ExperimentConfig::hash() const {
    // Where results go and how many threads compute them do not change them.
    json j = to_json();
    j.erase("output");
    j.erase("workers");
    const std::string canon = j.dump();
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char ch : canon) {
        h ^= ch;
        h *= 0x100000001B3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace degwave
