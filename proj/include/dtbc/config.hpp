#ifndef DTBC_CONFIG_HPP
#define DTBC_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dtbc/experiments.hpp"

namespace dtbc {

enum class ProblemPreset { Example1, Example2, Custom };

/// Contents of a `key = value` run configuration. Fields left unset take the
/// preset's defaults when the experiment is built.
struct RunConfig {
    ProblemPreset preset = ProblemPreset::Example1;

    std::optional<double> sigma;
    std::optional<double> theta;
    std::optional<double> h;
    std::vector<double> nodes; // explicit spatial nodes, overrides h
    std::optional<double> X;
    std::optional<double> tau;
    std::optional<int> M;
    BoundaryMode boundary_mode = BoundaryMode::Dtbc;
    double extension_factor = 5.0;

    std::string output_dir = ".";
    bool emit_snapshots = true;
    int snapshot_stride = 1;
    bool emit_kernel = false;
    bool run_diagnostics = false;

    std::vector<int> table_M;
    std::vector<double> table_theta;
    std::optional<int> kernel_m_max;
    int oracle_m_max = 50;

    int dissipativity_trials = 1000;
    int dissipativity_M = 200;
    std::uint64_t seed = 1;

    // Custom problem: smooth transition from interior values at x = 0 to the
    // tail constants at X0, polynomial Dirichlet datum, cos^2 bump initial datum.
    TailConstants tail;
    TailConstants interior;
    std::optional<double> X0;
    std::vector<double> g_poly;
    double u0_amplitude = 0.0;
    double u0_center = 0.0;
    double u0_width = 0.0;
    std::string exact = "none"; // none | zero
};

// Parses `a/b` fractions as well as plain numbers.
double parse_number(const std::string& text);

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

Experiment build_experiment(const RunConfig& config);

// Problem with g = 0, u0(0) = 0 on the same mesh and scheme, for the energy
// checks; returns the configured problem itself when it already qualifies.
ProblemSpec homogeneous_companion(const Experiment& experiment);

const char* to_string(ProblemPreset preset);

} // namespace dtbc

#endif // DTBC_CONFIG_HPP
