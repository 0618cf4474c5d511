#ifndef DTBC_EXPERIMENTS_HPP
#define DTBC_EXPERIMENTS_HPP

#include <string>
#include <vector>

#include "dtbc/problem.hpp"
#include "dtbc/stepper.hpp"
#include "dtbc/validation.hpp"

namespace dtbc {

// A complete run description: problem, exact solution, meshes, scheme.
struct Experiment {
    ProblemSpec problem;
    ExactSolution exact;
    Mesh mesh;
    SchemeConfig config;
};

struct RunResult {
    Trajectory trajectory;
    ErrorReport error;
    double runtime_seconds = 0.0;
    std::vector<std::string> warnings;
};

RunResult run(const Experiment& experiment);

// Heat-equation test cases on [0, X] with T = 1 and M levels.
Experiment example1(double theta, int M, BoundaryMode mode = BoundaryMode::Dtbc, double h = 0.05, double X = 2.5,
                    double sigma = 0.5);
Experiment example2(double theta, int M, BoundaryMode mode = BoundaryMode::Dtbc, double h = 0.1, double X = 1.0,
                    double sigma = 0.5);

struct ErrorTable {
    std::vector<double> thetas;
    std::vector<int> levels;
    std::vector<std::vector<double>> errors; // errors[theta index][M index]
};

// Errors of `base` with theta and M replaced (T kept fixed). One independent
// march per cell; cells run concurrently.
ErrorTable error_table_for(const Experiment& base, const std::vector<double>& thetas, const std::vector<int>& levels);

} // namespace dtbc

#endif // DTBC_EXPERIMENTS_HPP
