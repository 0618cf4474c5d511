#ifndef DTBC_VALIDATION_HPP
#define DTBC_VALIDATION_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "dtbc/kernel.hpp"
#include "dtbc/problem.hpp"
#include "dtbc/stepper.hpp"

namespace dtbc {

// Spreading Gaussian, an exact heat-equation solution.
double u1(double x, double t, double x_star = 1.25, double t0 = 0.03125);

// Repeated integrals of erfc, I_0 .. I_4, by the upward recurrence.
double iterated_erfc(int n, double xi);

// 32 t^2 I_4(x / (2 sqrt t)): heat-equation solution with u(0,t) = t^2 and
// zero initial data. Defined as 0 at t = 0.
double u2(double x, double t);

struct ExactSolution {
    std::string label;
    std::function<double(double, double)> value;
};

ExactSolution example1_exact();
ExactSolution example2_exact();
ExactSolution zero_exact();

struct ErrorReport {
    double max_abs_error = 0.0;
    int argmax_j = 0;
    int argmax_m = 0;
    std::vector<double> level_max; // entry m = max_j |error| at level m (entry 0 unused)
    bool has_exact = true;         // false when no exact solution was supplied
};

// Max over j in [0, J], m in [1, M] of |U^m_j - u(x_j, t_m)|. An empty
// exact solution gives a report with has_exact = false and NaN errors.
ErrorReport error_report(const Trajectory& trajectory, const ExactSolution& exact);

/// Energy balance of a trajectory computed with g = 0.
///
/// Equality residuals are relative to the largest term. Slacks are right side
/// minus left side of the a priori bounds, relative to the larger side.
struct EnergyDiagnostics {
    double first_equality = 0.0;
    double second_equality = 0.0;
    double bound_sb_slack = 0.0;
    double bound_sba_slack = 0.0;
    // theta = 1/4 with nonzero forcing: the bounds do not apply.
    bool bounds_applicable = true;
};

// `kernel` must be the DTBC kernel for DTBC trajectories and is ignored for
// Neumann trajectories.
EnergyDiagnostics diagnose_energy(const Trajectory& trajectory, const ProblemSpec& problem, const Kernel* kernel);

struct DissipativityResult {
    bool passed = true;
    // Largest normalized value of the two quadratic sums over all trials;
    // both must stay <= tolerance.
    double worst_cs = 0.0;
    double worst_csa = 0.0;
    double tolerance = 1e-10;
    int sequences = 0;
};

// Quadratic sums sum_m (S^m Phi) Phi^(sigma)m tau and sum_m (S^m Phi)(Phi^m -
// Phi^{m-1}), each divided by sum_m (Phi^m)^2 tau. Phi^0 must be 0.
double dissipativity_sum_cs(const Kernel& kernel, std::span<const double> phi);
double dissipativity_sum_csa(const Kernel& kernel, std::span<const double> phi);

/// Random i.i.d. uniform sequences on [-1, 1] (Phi^0 = 0), plus a spike,
/// alternating signs and a ramp; passes when every normalized sum is at most
/// `tolerance`. The kernel must have length >= M + 1.
DissipativityResult certify_dissipativity(const Kernel& kernel, int trials, int M, std::uint64_t seed,
                                          double tolerance = 1e-10);

} // namespace dtbc

#endif // DTBC_VALIDATION_HPP
