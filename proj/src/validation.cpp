#include "dtbc/validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "dtbc/discrete_ops.hpp"
#include "dtbc/error.hpp"

namespace dtbc {

double u1(double x, double t, double x_star, double t0)
{
    const double s = t + t0;
    return std::sqrt(t0 / s) * std::exp(-(x - x_star) * (x - x_star) / (4.0 * s));
}

double iterated_erfc(int n, double xi)
{
    if (n < 0 || n > 4)
        throw ValidationError("iterated_erfc: order must be in 0..4");
    const double i0 = std::erfc(xi);
    if (n == 0)
        return i0;
    double prev = i0;
    double cur = std::exp(-xi * xi) / std::sqrt(std::numbers::pi) - xi * i0;
    for (int k = 2; k <= n; ++k) {
        const double next = prev / (2.0 * k) - xi / k * cur;
        prev = cur;
        cur = next;
    }
    return cur;
}

double u2(double x, double t)
{
    if (t <= 0.0)
        return 0.0;
    return 32.0 * t * t * iterated_erfc(4, x / (2.0 * std::sqrt(t)));
}

ExactSolution example1_exact()
{
    return {"example1", [](double x, double t) { return u1(x, t); }};
}

ExactSolution example2_exact()
{
    return {"example2", [](double x, double t) { return u2(x, t); }};
}

ExactSolution zero_exact()
{
    return {"zero", [](double, double) { return 0.0; }};
}

ErrorReport error_report(const Trajectory& trajectory, const ExactSolution& exact)
{
    const Mesh& mesh = trajectory.mesh();
    ErrorReport report;
    report.level_max.assign(static_cast<std::size_t>(mesh.M()) + 1, 0.0);
    report.argmax_m = 1;
    if (!exact.value) {
        report.has_exact = false;
        report.max_abs_error = std::numeric_limits<double>::quiet_NaN();
        std::fill(report.level_max.begin(), report.level_max.end(), report.max_abs_error);
        return report;
    }
    for (int m = 1; m <= mesh.M(); ++m) {
        double level = 0.0;
        for (int j = 0; j <= mesh.J(); ++j) {
            const double e = std::abs(trajectory(j, m) - exact.value(mesh.x(j), mesh.t(m)));
            level = std::max(level, e);
            if (e > report.max_abs_error) {
                report.max_abs_error = e;
                report.argmax_j = j;
                report.argmax_m = m;
            }
        }
        report.level_max[static_cast<std::size_t>(m)] = level;
    }
    return report;
}

namespace {

// Weighted sum of squared backward differences, sum_j b_j (dW_j)^2 h_j.
double stiffness(const Mesh& mesh, GridValues b_h, GridValues w)
{
    double sum = 0.0;
    for (int j = 1; j <= mesh.J(); ++j) {
        const double d = backward_dx(mesh, w, j);
        sum += b_h[static_cast<std::size_t>(j)] * d * d * mesh.h(j);
    }
    return sum;
}

double relative_residual(double lhs, double rhs, std::initializer_list<double> terms)
{
    double scale = 0.0;
    for (double t : terms)
        scale = std::max(scale, std::abs(t));
    if (scale == 0.0)
        return 0.0;
    return std::abs(lhs - rhs) / scale;
}

double relative_slack(double rhs, double lhs)
{
    const double scale = std::max(std::abs(rhs), std::abs(lhs));
    return scale == 0.0 ? 0.0 : (rhs - lhs) / scale;
}

} // namespace

EnergyDiagnostics diagnose_energy(const Trajectory& trajectory, const ProblemSpec& problem, const Kernel* kernel)
{
    const Mesh& mesh = trajectory.mesh();
    const SchemeConfig& config = trajectory.config();
    const int J = mesh.J();
    const int M = mesh.M();
    for (int m = 0; m <= M; ++m) {
        if (trajectory(0, m) != 0.0)
            throw ValidationError("diagnose_energy: needs a trajectory with U_0 = 0 (g = 0, u0(0) = 0)");
    }
    const bool dtbc = config.mode == BoundaryMode::Dtbc;
    if (dtbc && (kernel == nullptr || kernel->M() < M))
        throw ValidationError("diagnose_energy: DTBC trajectory needs its kernel up to level M");

    const SampledCoefficients coeffs = sample(problem, mesh);
    const double sigma = config.sigma;
    const double theta = config.theta;
    const double tau = mesh.tau();
    const double b_inf = problem.tail.b;
    const double c_inf = problem.tail.c;
    const NormSet norms = make_norm_set(sigma, theta);
    const std::vector<double> phi = trajectory.boundary_history();

    auto C = [&](GridValues u, GridValues w) { return form_c_theta(mesh, u, w, coeffs.rho_h, theta); };
    auto Cc = [&](GridValues u, GridValues w) { return form_c_theta(mesh, u, w, coeffs.c_h, theta); };
    auto L = [&](GridValues u, GridValues w) { return form_l(mesh, u, w, coeffs.b_h, coeffs.c_h, c_inf, theta); };

    const auto n = static_cast<std::size_t>(J) + 1;
    std::vector<double> us(n);
    std::vector<double> dt(n);

    double sum_dt_c = 0.0;     // sum tau^2 |dtU|_C^2
    double sum_dt_c_tau = 0.0; // sum tau |dtU|_C^2
    double sum_dt_l = 0.0;     // sum tau^2 |dtU|_L^2
    double sum_stiff = 0.0;
    double sum_react = 0.0;
    double boundary1 = 0.0;
    double boundary2 = 0.0;
    double forcing1 = 0.0;
    double forcing2 = 0.0;
    double f_l1 = 0.0; // sum |F^m|_omega tau
    double f_l2 = 0.0; // sum |F^m|_omega^2 tau
    // maxima over m >= 1
    double max_c = 0.0;
    double max_l = 0.0;

    for (int m = 1; m <= M; ++m) {
        const auto now = trajectory.level(m);
        const auto before = trajectory.level(m - 1);
        for (std::size_t j = 0; j < n; ++j) {
            us[j] = sigma * now[j] + (1.0 - sigma) * before[j];
            dt[j] = (now[j] - before[j]) / tau;
        }
        const double c_dt = C(dt, dt);
        const double l_dt = L(dt, dt);
        sum_dt_c += tau * tau * c_dt;
        sum_dt_c_tau += tau * c_dt;
        sum_dt_l += tau * tau * l_dt;
        sum_stiff += tau * stiffness(mesh, coeffs.b_h, us);
        sum_react += tau * Cc(us, us);

        const double s = dtbc ? convolve(*kernel, phi, m) : 0.0;
        boundary1 += tau * s * us[n - 1];
        boundary2 += tau * s * dt[n - 1];

        const auto f = coeffs.F_level(m);
        forcing1 += tau * inner_omega(mesh, f, us);
        forcing2 += tau * inner_omega(mesh, f, dt);
        const double fn = norm_omega(mesh, f);
        f_l1 += tau * fn;
        f_l2 += tau * fn * fn;

        max_c = std::max(max_c, C(now, now));
        max_l = std::max(max_l, L(now, now));
    }

    const auto first = trajectory.level(0);
    const auto final = trajectory.level(M);
    const double c0 = C(first, first);
    const double cM = C(final, final);
    const double l0 = L(first, first);
    const double lM = L(final, final);

    EnergyDiagnostics out;
    {
        const double t1 = 0.5 * cM;
        const double t2 = (sigma - 0.5) * sum_dt_c;
        const double t3 = -b_inf * boundary1;
        const double lhs = t1 + t2 + sum_stiff + sum_react + t3;
        const double rhs = 0.5 * c0 + forcing1;
        out.first_equality = relative_residual(lhs, rhs, {t1, t2, sum_stiff, sum_react, t3, 0.5 * c0, forcing1});
    }
    {
        const double t1 = 0.5 * lM;
        const double t2 = (sigma - 0.5) * sum_dt_l;
        const double t3 = -b_inf * boundary2;
        const double lhs = sum_dt_c_tau + t1 + t2 + t3;
        const double rhs = 0.5 * l0 + forcing2;
        out.second_equality = relative_residual(lhs, rhs, {sum_dt_c_tau, t1, t2, t3, 0.5 * l0, forcing2});
    }

    const bool forced = f_l1 > 0.0;
    out.bounds_applicable = !(forced && norms.c_theta <= 0.0);
    if (out.bounds_applicable) {
        const double norm1_sq = (sigma - 0.5) * sum_dt_c + sum_stiff + sum_react;
        const double lhs1 = std::max(std::sqrt(max_c), std::sqrt(2.0 * std::max(norm1_sq, 0.0)));
        double rhs1 = std::sqrt(c0);
        if (forced)
            rhs1 += norms.K_sigma / std::sqrt(norms.c_theta * problem.rho_lower) * f_l1;
        out.bound_sb_slack = relative_slack(rhs1, lhs1);

        const double norm2_sq = (sigma - 0.5) * sum_dt_l + sum_dt_c_tau;
        const double lhs2 = std::max(std::sqrt(max_l), std::sqrt(2.0 * std::max(norm2_sq, 0.0)));
        double rhs2 = std::sqrt(l0);
        if (forced)
            rhs2 += std::sqrt(2.0 / (norms.c_theta * problem.rho_lower)) * std::sqrt(f_l2);
        out.bound_sba_slack = relative_slack(rhs2, lhs2);
    }
    return out;
}

namespace {

std::vector<double> apply_boundary_operator(const Kernel& kernel, std::span<const double> phi)
{
    const int M = static_cast<int>(phi.size()) - 1;
    std::vector<double> s(phi.size(), 0.0);
    for (int m = 1; m <= M; ++m)
        s[static_cast<std::size_t>(m)] = convolve(kernel, phi, m);
    return s;
}

double phi_norm_sq(std::span<const double> phi, double tau)
{
    double sum = 0.0;
    for (std::size_t m = 1; m < phi.size(); ++m)
        sum += phi[m] * phi[m] * tau;
    return sum;
}

void require_zero_start(std::span<const double> phi)
{
    if (phi.empty() || phi[0] != 0.0)
        throw ValidationError("dissipativity: sequence must start with Phi^0 = 0");
}

} // namespace

double dissipativity_sum_cs(const Kernel& kernel, std::span<const double> phi)
{
    require_zero_start(phi);
    const double sigma = kernel.params().sigma;
    const double tau = kernel.params().tau;
    const std::vector<double> s = apply_boundary_operator(kernel, phi);
    double sum = 0.0;
    for (std::size_t m = 1; m < phi.size(); ++m)
        sum += s[m] * (sigma * phi[m] + (1.0 - sigma) * phi[m - 1]) * tau;
    const double norm = phi_norm_sq(phi, tau);
    return norm == 0.0 ? sum : sum / norm;
}

double dissipativity_sum_csa(const Kernel& kernel, std::span<const double> phi)
{
    require_zero_start(phi);
    const double tau = kernel.params().tau;
    const std::vector<double> s = apply_boundary_operator(kernel, phi);
    double sum = 0.0;
    for (std::size_t m = 1; m < phi.size(); ++m)
        sum += s[m] * (phi[m] - phi[m - 1]);
    const double norm = phi_norm_sq(phi, tau);
    return norm == 0.0 ? sum : sum / norm;
}

DissipativityResult certify_dissipativity(const Kernel& kernel, int trials, int M, std::uint64_t seed,
                                          double tolerance)
{
    if (M < 1 || kernel.M() < M)
        throw ValidationError("certify_dissipativity: kernel shorter than M + 1");
    if (trials < 0)
        throw ValidationError("certify_dissipativity: negative trial count");

    DissipativityResult result;
    result.tolerance = tolerance;
    result.worst_cs = -std::numeric_limits<double>::infinity();
    result.worst_csa = -std::numeric_limits<double>::infinity();
    const auto n = static_cast<std::size_t>(M) + 1;

    auto check = [&](const std::vector<double>& phi) {
        result.worst_cs = std::max(result.worst_cs, dissipativity_sum_cs(kernel, phi));
        result.worst_csa = std::max(result.worst_csa, dissipativity_sum_csa(kernel, phi));
        ++result.sequences;
    };

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);
    std::vector<double> phi(n);
    for (int t = 0; t < trials; ++t) {
        phi[0] = 0.0;
        for (std::size_t m = 1; m < n; ++m)
            phi[m] = uniform(rng);
        check(phi);
    }

    std::fill(phi.begin(), phi.end(), 0.0);
    phi[1] = 1.0; // spike
    check(phi);
    for (std::size_t m = 1; m < n; ++m) // alternating signs
        phi[m] = (m % 2 == 0) ? -1.0 : 1.0;
    check(phi);
    for (std::size_t m = 1; m < n; ++m) // ramp
        phi[m] = static_cast<double>(m) / M;
    check(phi);

    result.passed = result.worst_cs <= tolerance && result.worst_csa <= tolerance;
    return result;
}

} // namespace dtbc
