// Python bindings. Every operation takes and returns JSON text in the same
// formats the command-line tool uses, so the Python layer stays a thin shim.

#include <pybind11/pybind11.h>

#include <json.hpp>

#include "parclust/generator.hpp"
#include "parclust/io.hpp"
#include "parclust/kcenter.hpp"
#include "parclust/oracle.hpp"
#include "parclust/parity_fl.hpp"
#include "parclust/ufl.hpp"

namespace py = pybind11;
using namespace parclust;
using nlohmann::json;

namespace {

SolverConfig::Mode parse_mode(const std::string &mode) {
    if (mode == "auto") return SolverConfig::Mode::auto_dispatch;
    if (mode == "all-even") return SolverConfig::Mode::all_even;
    if (mode == "general") return SolverConfig::Mode::general;
    throw std::invalid_argument("mode must be auto, all-even, or general");
}

std::string py_solve_fl(const std::string &text, const std::string &mode, int trials,
                        std::uint64_t seed) {
    Instance inst = parse_fl_instance(text);
    auto report = validate_instance(inst);
    if (!report.ok()) throw ParseError(report.describe(inst));
    SolverConfig cfg;
    cfg.mode = parse_mode(mode);
    cfg.trials = trials;
    cfg.seed = seed;
    return serialize_fl_solution(inst, solve_fl(inst, cfg));
}

std::string py_solve_kcenter(const std::string &text, bool linear_scan) {
    KCenterInstance inst = parse_kcenter_instance(text);
    auto res = solve_kcenter(inst, linear_scan);
    if (!res) throw InfeasibleError("no feasible solution for any radius");
    return serialize_kcenter_solution(inst, *res);
}

std::string py_oracle_fl(const std::string &text, bool respect_parity) {
    Instance inst = parse_fl_instance(text);
    auto res = exact_fl(inst, respect_parity);
    if (!res) throw InfeasibleError("no feasible solution exists");
    json out{{"optimum", to_double(res->optimum_value)},
             {"enumerated", res->enumeration_size},
             {"witness", json::parse(serialize_fl_solution(inst, res->witness))}};
    return out.dump(2) + "\n";
}

std::string py_oracle_kcenter(const std::string &text) {
    KCenterInstance inst = parse_kcenter_instance(text);
    auto res = exact_kcenter(inst);
    if (!res) throw InfeasibleError("no feasible solution exists");
    json centers = json::array();
    for (int v : res->centers) centers.push_back(inst.ids[v]);
    json out{{"optimum", res->radius}, {"enumerated", res->enumeration_size},
             {"centers", centers}};
    return out.dump(2) + "\n";
}

std::string py_generate(const std::string &problem, int nf, int nd, int k,
                        const std::string &geometry, const std::string &parity_mix,
                        bool feasible_only, std::uint64_t seed) {
    GenParams p;
    p.nf = nf;
    p.nd = nd;
    p.k = k;
    p.geometry = geometry;
    p.feasible_only = feasible_only;
    p.seed = seed;
    parse_parity_mix(parity_mix, p);
    if (problem == "fl") return serialize_fl_instance(generate_fl_instance(p));
    if (problem == "kcenter") return serialize_kcenter_instance(generate_kcenter_instance(p));
    throw std::invalid_argument("problem must be fl or kcenter");
}

std::string py_verify(const std::string &text) {
    Instance inst = parse_fl_instance(text);
    auto report = validate_instance(inst);
    json out{{"ok", report.ok()}};
    if (!report.ok()) out["detail"] = report.describe(inst);
    return out.dump(2) + "\n";
}

}  // namespace

PYBIND11_MODULE(_parclust, m) {
    m.doc() = "parity-constrained clustering solvers";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<InfeasibleError>(m, "InfeasibleError", PyExc_RuntimeError);
    py::register_exception<SizeGuardError>(m, "SizeGuardError", PyExc_RuntimeError);

    m.def("solve_fl", &py_solve_fl, py::arg("instance_json"), py::arg("mode") = "auto",
          py::arg("trials") = 16, py::arg("seed") = 0,
          "Approximate a facility-location instance; returns solution JSON.");
    m.def("solve_kcenter", &py_solve_kcenter, py::arg("instance_json"),
          py::arg("linear_scan") = false,
          "Approximate a k-center instance; returns solution JSON.");
    m.def("oracle_fl", &py_oracle_fl, py::arg("instance_json"), py::arg("respect_parity") = true,
          "Exact optimum by bounded enumeration; returns JSON with optimum and witness.");
    m.def("oracle_kcenter", &py_oracle_kcenter, py::arg("instance_json"),
          "Exact optimum radius by bounded enumeration; returns JSON.");
    m.def("generate", &py_generate, py::arg("problem") = "fl", py::arg("nf") = 4,
          py::arg("nd") = 6, py::arg("k") = 2, py::arg("geometry") = "euclidean",
          py::arg("parity_mix") = "1:1:1", py::arg("feasible_only") = false, py::arg("seed") = 0,
          "Emit a seeded random instance as JSON.");
    m.def("verify", &py_verify, py::arg("instance_json"),
          "Validate a facility-location instance; returns a JSON report.");
}
