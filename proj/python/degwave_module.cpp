#include "degwave/campaigns.hpp"
#include "degwave/errors.hpp"
#include "degwave/estimators.hpp"
#include "degwave/multiplier.hpp"
#include "degwave/transposition.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace degwave;

namespace {

py::array_t<double> to_array(std::span<const double> v) {
    py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

py::array_t<double> to_matrix(const SpaceTimeField& f) {
    py::array_t<double> out({static_cast<py::ssize_t>(f.levels()), static_cast<py::ssize_t>(f.grid().size())});
    std::copy(f.flat().begin(), f.flat().end(), out.mutable_data());
    return out;
}

WaveProblem problem(double alpha, std::size_t cells, std::size_t steps, double T, const std::string& scheme) {
    WaveProblem p;
    p.grid = Grid::uniform(cells, Degeneracy(alpha));
    p.T = T;
    p.nt = steps;
    p.scheme = scheme_from_string(scheme);
    return p;
}

WaveData catalog_data(const std::string& name, const WaveProblem& p) {
    if (name.rfind("suite:", 0) == 0) {
        SuiteSettings s;
        const std::size_t i = std::stoul(name.substr(6));
        s.size = std::max(s.size, i + 1);
        return random_suite(p.grid->regime(), s).at(i).wave_data(p);
    }
    return manufactured_problem(catalog_from_string(name), p).data;
}

ExperimentConfig config_from(const std::string& text) {
    return text.empty() ? ExperimentConfig{} : ExperimentConfig::from_json(nlohmann::json::parse(text));
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Degenerate wave equation solver and verification campaigns";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    m.def("version", [] { return std::string(version_string()); });

    m.def(
        "solve",
        [](double alpha, std::size_t cells, std::optional<std::size_t> steps, double T, const std::string& data,
           const std::string& scheme) {
            const WaveProblem p = problem(alpha, cells, steps.value_or(cells), T, scheme);
            const WaveData d = catalog_data(data, p);
            const WaveSolution s = solve_weak(p, d);
            py::dict out;
            out["regime"] = std::string(to_string(p.grid->regime()));
            out["nodes"] = to_array(p.grid->nodes());
            out["times"] = to_array(s.u.times());
            out["u"] = to_matrix(s.u);
            out["v"] = to_matrix(s.v);
            out["energy"] = to_array(s.energy.values);
            out["trace"] = to_array(s.trace.values);
            out["n0"] = n0(d);
            return out;
        },
        py::arg("alpha"), py::arg("cells"), py::arg("steps") = py::none(), py::arg("T") = 1.0,
        py::arg("data") = "wdc-poly", py::arg("scheme") = "newmark",
        "Weak solve of a catalog entry or suite:<i> datum; returns nodal arrays and series.");

    m.def(
        "boundary_functionals",
        [](double alpha, std::size_t cells, std::optional<std::size_t> steps, double T, const std::string& data,
           const std::vector<double>& epsilons) {
            const WaveProblem p = problem(alpha, cells, steps.value_or(cells), T, "newmark");
            const WaveData d = catalog_data(data, p);
            const WaveSolution s = solve_weak(p, d);
            std::vector<double> theta;
            std::vector<double> g;
            for (double e : epsilons) {
                theta.push_back(theta_functional(s.u, e));
                g.push_back(g_functional(s.u, e, &s.trace));
            }
            py::dict out;
            out["theta"] = theta;
            out["g"] = g;
            out["g0"] = g_functional(s.u, 0.0, &s.trace);
            out["n0"] = n0(d);
            out["hidden_ratio"] = hidden_regularity_ratio(s, d);
            return out;
        },
        py::arg("alpha"), py::arg("cells"), py::arg("steps") = py::none(), py::arg("T") = 1.0,
        py::arg("data") = "wdc-poly", py::arg("epsilons") = std::vector<double>{0.4, 0.2, 0.1});

    m.def(
        "convergence_study",
        [](const std::string& entry, double alpha, const std::vector<std::size_t>& levels, double T) {
            ConvergenceSettings s;
            s.entry = catalog_from_string(entry);
            s.alpha = alpha;
            s.levels = levels;
            s.T = T;
            py::list rows;
            for (const auto& r : degwave::convergence_study(s)) {
                py::dict d;
                d["cells"] = r.cells;
                d["l2_error"] = r.l2_error;
                d["trace_error"] = r.trace_error;
                d["order_l2"] = r.order_l2;
                d["order_trace"] = r.order_trace;
                rows.append(d);
            }
            return rows;
        },
        py::arg("entry"), py::arg("alpha"), py::arg("levels") = std::vector<std::size_t>{64, 128, 256},
        py::arg("T") = 1.0);

    py::class_<MultiplierProfile>(m, "MultiplierProfile")
        .def(py::init(&MultiplierProfile::build), py::arg("delta"), py::arg("gamma"))
        .def_property_readonly("delta", &MultiplierProfile::delta)
        .def_property_readonly("gamma", &MultiplierProfile::gamma)
        .def_property_readonly("kappa", &MultiplierProfile::kappa)
        .def("value", &MultiplierProfile::value)
        .def("d1", &MultiplierProfile::d1)
        .def("d2", &MultiplierProfile::d2)
        .def("junction_mismatch", &MultiplierProfile::junction_mismatch);

    m.def(
        "multiplier_residual",
        [](double alpha, std::size_t cells, double delta, double gamma, double T, const std::string& data) {
            const WaveProblem p = problem(alpha, cells, cells, T, "newmark");
            const WaveData d = catalog_data(data, p);
            return multiplier_identity_residual(solve_weak(p, d), d, MultiplierProfile::build(delta, gamma));
        },
        py::arg("alpha"), py::arg("cells"), py::arg("delta") = 0.1, py::arg("gamma") = 0.05, py::arg("T") = 1.0,
        py::arg("data") = "wdc-poly");

    m.def("embedding_constants", [](double alpha, double a) {
        return std::pair{embedding_constant_A1(alpha, a), embedding_constant_A2(alpha, a)};
    });

    m.def(
        "duality_residuals",
        [](double alpha, const std::string& datum, std::size_t cells, double T) {
            const WaveProblem p = problem(alpha, cells, cells, T, "newmark");
            const VeryWeakData d = make_duality_datum(duality_datum_from_string(datum), p);
            const VeryWeakSolution s = solve_very_weak(d, p);
            std::vector<double> out;
            for (const auto& F : bump_catalog(T)) {
                out.push_back(duality_residual(s, d, F, p));
            }
            return out;
        },
        py::arg("alpha"), py::arg("datum"), py::arg("cells"), py::arg("T") = 1.0);

    m.def(
        "liminf_experiment",
        [](const std::string& family, double alpha, double T, std::size_t cells, const std::vector<double>& epsilons,
           const std::string& estimator) {
            LiminfSettings s;
            s.alpha = alpha;
            s.T = T;
            s.cells = cells;
            s.epsilons = epsilons;
            s.estimator = liminf_estimator_from_string(estimator);
            const LiminfReport r = degwave::liminf_experiment(make_family(family, s), s);
            py::dict out;
            out["theta"] = r.theta;
            out["weak_defect"] = r.weak_defect;
            out["growth_exponent"] = r.growth_exponent;
            out["hypothesis_holds"] = r.hypothesis_holds;
            out["liminf_estimate"] = r.liminf_estimate;
            out["trace_l2_squared"] = r.trace_l2_squared;
            out["slack"] = r.slack;
            out["slack_tail_minimum"] = r.slack_tail_minimum;
            out["slack_richardson"] = r.slack_richardson;
            return out;
        },
        py::arg("family"), py::arg("alpha") = 1.0, py::arg("T") = 3.141592653589793, py::arg("cells") = 256,
        py::arg("epsilons") = std::vector<double>{0.2, 0.1, 0.05}, py::arg("estimator") = "tail-min");

    m.def(
        "default_config", [] { return ExperimentConfig{}.to_json().dump(); },
        "Default configuration as a JSON string.");
    m.def(
        "config_hash", [](const std::string& text) { return config_from(text).hash(); }, py::arg("config") = "");

    m.def(
        "run_campaign",
        [](const std::string& name, const std::string& config) {
            ExperimentConfig c = config_from(config);
            c.validate();
            CampaignResult r;
            {
                py::gil_scoped_release release;
                if (name == "convergence") {
                    r = run_convergence(c);
                } else if (name == "verify-embedding") {
                    r = run_embedding(c);
                } else if (name == "verify-energy") {
                    r = run_energy(c);
                } else if (name == "verify-multiplier") {
                    r = run_multiplier(c);
                } else if (name == "sweep-theorems") {
                    r = run_sweep(c);
                } else if (name == "verify-duality") {
                    r = run_duality(c);
                } else if (name == "verify-liminf") {
                    r = run_liminf(c);
                } else {
                    throw ArgumentError("unknown campaign '" + name + "'");
                }
            }
            return std::tuple{r.summary.dump(), r.violations};
        },
        py::arg("name"), py::arg("config") = "",
        "Runs one campaign; returns (summary JSON string, violations).");
}
