#include "dtbc/experiments.hpp"

#include <chrono>
#include <cmath>
#include <future>

namespace dtbc {

RunResult run(const Experiment& experiment)
{
    const auto start = std::chrono::steady_clock::now();
    const SampledCoefficients coeffs = sample(experiment.problem, experiment.mesh);
    Trajectory trajectory = march(experiment.problem, experiment.mesh, experiment.config);
    ErrorReport error = error_report(trajectory, experiment.exact);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    return RunResult{std::move(trajectory), std::move(error), elapsed.count(), coeffs.warnings};
}

namespace {

int intervals(double X, double h) { return static_cast<int>(std::lround(X / h)); }

} // namespace

Experiment example1(double theta, int M, BoundaryMode mode, double h, double X, double sigma)
{
    return Experiment{example1_problem(X, h), example1_exact(), Mesh::uniform(X, intervals(X, h), 1.0 / M, M),
                      SchemeConfig{sigma, theta, mode}};
}

Experiment example2(double theta, int M, BoundaryMode mode, double h, double X, double sigma)
{
    return Experiment{example2_problem(X, h), example2_exact(), Mesh::uniform(X, intervals(X, h), 1.0 / M, M),
                      SchemeConfig{sigma, theta, mode}};
}

ErrorTable error_table_for(const Experiment& base, const std::vector<double>& thetas, const std::vector<int>& levels)
{
    const double T = base.mesh.T();
    std::vector<std::vector<std::future<double>>> cells(thetas.size());
    for (std::size_t i = 0; i < thetas.size(); ++i) {
        for (int M : levels) {
            Experiment e = base;
            e.config.theta = thetas[i];
            e.mesh = base.mesh.with_time(T / M, M);
            cells[i].push_back(std::async(std::launch::async, [e = std::move(e)] { return run(e).error.max_abs_error; }));
        }
    }
    ErrorTable table{thetas, levels, {}};
    for (auto& row : cells) {
        std::vector<double> values;
        for (auto& cell : row)
            values.push_back(cell.get());
        table.errors.push_back(std::move(values));
    }
    return table;
}

} // namespace dtbc
