#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "dtbc/config.hpp"
#include "dtbc/error.hpp"
#include "dtbc/experiments.hpp"
#include "dtbc/kernel.hpp"
#include "dtbc/validation.hpp"

namespace py = pybind11;
using namespace dtbc;

namespace {

BoundaryMode parse_mode(const std::string& mode)
{
    if (mode == "dtbc")
        return BoundaryMode::Dtbc;
    if (mode == "neumann")
        return BoundaryMode::Neumann;
    if (mode == "reference")
        return BoundaryMode::Reference;
    throw ValidationError("unknown boundary mode '" + mode + "'");
}

Experiment example_experiment(int example, double theta, int M, const std::string& mode, double sigma)
{
    const BoundaryMode m = parse_mode(mode);
    if (example == 1)
        return example1(theta, M, m, 0.05, 2.5, sigma);
    if (example == 2)
        return example2(theta, M, m, 0.1, 1.0, sigma);
    throw ValidationError("example must be 1 or 2");
}

py::dict to_dict(const Experiment& e, const RunResult& r)
{
    const Trajectory& t = r.trajectory;
    std::vector<std::vector<double>> levels;
    levels.reserve(static_cast<std::size_t>(t.M()) + 1);
    for (int m = 0; m <= t.M(); ++m) {
        const auto level = t.level(m);
        levels.emplace_back(level.begin(), level.end());
    }
    std::vector<double> times;
    for (int m = 0; m <= t.M(); ++m)
        times.push_back(t.mesh().t(m));
    const auto nodes = t.mesh().nodes();

    py::dict d;
    d["x"] = std::vector<double>(nodes.begin(), nodes.end());
    d["t"] = times;
    d["U"] = levels;
    d["boundary_mode"] = std::string(to_string(e.config.mode));
    d["max_abs_error"] = r.error.max_abs_error;
    d["argmax_j"] = r.error.argmax_j;
    d["argmax_m"] = r.error.argmax_m;
    d["has_exact"] = r.error.has_exact;
    d["runtime_seconds"] = r.runtime_seconds;
    d["warnings"] = r.warnings;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Solver for rho u_t = (b u_x)_x - c u + f on the half-axis with discrete transparent boundary conditions";

    py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);
    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);

    py::class_<TailConstants>(m, "TailConstants")
        .def(py::init<double, double, double>(), py::arg("rho") = 1.0, py::arg("b") = 1.0, py::arg("c") = 0.0)
        .def_readwrite("rho", &TailConstants::rho)
        .def_readwrite("b", &TailConstants::b)
        .def_readwrite("c", &TailConstants::c);

    py::class_<KernelParams>(m, "KernelParams")
        .def_readonly("sigma", &KernelParams::sigma)
        .def_readonly("theta", &KernelParams::theta)
        .def_readonly("h", &KernelParams::h)
        .def_readonly("tau", &KernelParams::tau)
        .def_readonly("a1", &KernelParams::a1)
        .def_readonly("a0", &KernelParams::a0)
        .def_readonly("d0", &KernelParams::d0)
        .def_readonly("d1", &KernelParams::d1)
        .def_readonly("alpha0", &KernelParams::alpha0)
        .def_readonly("alpha1", &KernelParams::alpha1)
        .def_readonly("alpha", &KernelParams::alpha)
        .def_readonly("beta", &KernelParams::beta)
        .def_readonly("delta", &KernelParams::delta)
        .def_readonly("sigma0", &KernelParams::sigma0)
        .def_readonly("supported", &KernelParams::supported);

    m.def("derive_params", &derive_params, py::arg("tail"), py::arg("h"), py::arg("tau"), py::arg("sigma"),
          py::arg("theta"));

    m.def(
        "kernel",
        [](const KernelParams& p, int M, const std::string& method) -> std::vector<double> {
            if (method == "recurrence") {
                const Kernel k = kernel_by_recurrence(p, M);
                return {k.values().begin(), k.values().end()};
            }
            if (method == "legendre") {
                const Kernel k = kernel_by_legendre(p, M);
                return {k.values().begin(), k.values().end()};
            }
            if (method == "oracle")
                return kernel_gf_oracle(p, M);
            throw ValidationError("method must be recurrence, legendre or oracle");
        },
        py::arg("params"), py::arg("M"), py::arg("method") = "recurrence", "Kernel values R^0..R^M.");

    m.def(
        "certify_dissipativity",
        [](const KernelParams& p, int trials, int M, std::uint64_t seed) {
            const DissipativityResult r = certify_dissipativity(kernel_by_recurrence(p, M), trials, M, seed);
            py::dict d;
            d["passed"] = r.passed;
            d["worst_cs"] = r.worst_cs;
            d["worst_csa"] = r.worst_csa;
            d["sequences"] = r.sequences;
            return d;
        },
        py::arg("params"), py::arg("trials") = 1000, py::arg("M") = 200, py::arg("seed") = 1);

    m.def("u1", &u1, py::arg("x"), py::arg("t"), py::arg("x_star") = 1.25, py::arg("t0") = 0.03125);
    m.def("u2", &u2, py::arg("x"), py::arg("t"));
    m.def("iterated_erfc", &iterated_erfc, py::arg("n"), py::arg("xi"));

    m.def(
        "run_example",
        [](int example, double theta, int M, const std::string& mode, double sigma) {
            const Experiment e = example_experiment(example, theta, M, mode, sigma);
            const RunResult r = [&] {
                py::gil_scoped_release release;
                return run(e);
            }();
            return to_dict(e, r);
        },
        py::arg("example"), py::arg("theta") = 1.0 / 12.0, py::arg("M") = 100, py::arg("mode") = "dtbc",
        py::arg("sigma") = 0.5, "March example 1 or 2 to T = 1 with M levels.");

    m.def(
        "run_config",
        [](const std::string& text) {
            const Experiment e = build_experiment(parse_config(text));
            return to_dict(e, run(e));
        },
        py::arg("text"), "Run a `key = value` configuration given as text.");

    m.def(
        "error_table",
        [](int example, const std::vector<double>& thetas, const std::vector<int>& levels, const std::string& mode) {
            const Experiment base = example_experiment(example, thetas.empty() ? 0.0 : thetas.front(),
                                                       levels.empty() ? 1 : levels.front(), mode, 0.5);
            py::gil_scoped_release release;
            return error_table_for(base, thetas, levels).errors;
        },
        py::arg("example"), py::arg("thetas"), py::arg("levels"), py::arg("mode") = "dtbc",
        "Max-abs errors, one row per theta, one column per M.");
}
