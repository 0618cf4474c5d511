#include "dtbc/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dtbc/error.hpp"

namespace dtbc {

const char* to_string(BoundaryMode mode)
{
    switch (mode) {
    case BoundaryMode::Dtbc:
        return "dtbc";
    case BoundaryMode::Neumann:
        return "neumann";
    case BoundaryMode::Reference:
        return "reference";
    }
    return "unknown";
}

void SchemeConfig::validate() const
{
    if (!(sigma >= 0.5))
        throw ValidationError("scheme: sigma must be at least 1/2");
    if (!(theta <= 0.25))
        throw ValidationError("scheme: theta must not exceed 1/4");
    if (mode == BoundaryMode::Reference && !(extension_factor >= 2.0))
        throw ValidationError("scheme: extension factor must be at least 2");
}

// --- tridiagonal algebra -----------------------------------------------------

TridiagonalSystem::TridiagonalSystem(int J)
    : sub(static_cast<std::size_t>(J) + 1), diag(static_cast<std::size_t>(J) + 1), sup(static_cast<std::size_t>(J) + 1),
      rhs(static_cast<std::size_t>(J) + 1)
{
}

std::vector<double> TridiagonalSystem::apply(std::span<const double> u) const
{
    const std::size_t n = diag.size();
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        double v = diag[j] * u[j];
        if (j > 0)
            v += sub[j] * u[j - 1];
        if (j + 1 < n)
            v += sup[j] * u[j + 1];
        out[j] = v;
    }
    return out;
}

TridiagonalFactor::TridiagonalFactor(const TridiagonalSystem& matrix)
    : sub_(matrix.sub), sup_over_pivot_(matrix.diag.size()), pivot_(matrix.diag.size())
{
    const std::size_t n = matrix.diag.size();
    double scale = 0.0;
    for (double d : matrix.diag)
        scale = std::max(scale, std::abs(d));
    if (!(scale > 0.0))
        throw NumericalError("tridiagonal: zero matrix");

    min_relative_pivot_ = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
        double pivot = matrix.diag[j];
        if (j > 0)
            pivot -= matrix.sub[j] * sup_over_pivot_[j - 1];
        const double relative = std::abs(pivot) / scale;
        if (!(relative > 1e-14))
            throw NumericalError("tridiagonal: vanishing pivot in row " + std::to_string(j));
        min_relative_pivot_ = std::min(min_relative_pivot_, relative);
        pivot_[j] = pivot;
        sup_over_pivot_[j] = j + 1 < n ? matrix.sup[j] / pivot : 0.0;
    }
}

std::vector<double> TridiagonalFactor::solve(std::span<const double> rhs) const
{
    const std::size_t n = pivot_.size();
    std::vector<double> y(n);
    for (std::size_t j = 0; j < n; ++j)
        y[j] = (rhs[j] - (j > 0 ? sub_[j] * y[j - 1] : 0.0)) / pivot_[j];
    for (std::size_t j = n - 1; j-- > 0;)
        y[j] -= sup_over_pivot_[j] * y[j + 1];
    return y;
}

std::vector<double> solve_tridiagonal(const TridiagonalSystem& system)
{
    return TridiagonalFactor(system).solve(system.rhs);
}

// --- trajectory --------------------------------------------------------------

Trajectory::Trajectory(Mesh mesh, SchemeConfig config)
    : mesh_(std::move(mesh)), config_(config),
      values_(static_cast<std::size_t>(mesh_.M() + 1) * static_cast<std::size_t>(mesh_.J() + 1))
{
}

std::span<const double> Trajectory::level(int m) const
{
    return std::span<const double>(values_).subspan(index(0, m), static_cast<std::size_t>(J() + 1));
}

std::span<double> Trajectory::level(int m)
{
    return std::span<double>(values_).subspan(index(0, m), static_cast<std::size_t>(J() + 1));
}

std::vector<double> Trajectory::boundary_history() const
{
    std::vector<double> phi(static_cast<std::size_t>(M() + 1));
    for (int m = 0; m <= M(); ++m)
        phi[static_cast<std::size_t>(m)] = (*this)(J(), m);
    return phi;
}

Trajectory Trajectory::restricted_to(const Mesh& mesh) const
{
    if (mesh.J() > J() || mesh.M() != M())
        throw ValidationError("trajectory: restriction mesh is not a prefix of this mesh");
    for (int j = 0; j <= mesh.J(); ++j) {
        if (std::abs(mesh.x(j) - mesh_.x(j)) > 1e-12 * mesh.X())
            throw ValidationError("trajectory: restriction mesh nodes differ");
    }
    Trajectory out(mesh, config_);
    for (int m = 0; m <= M(); ++m) {
        auto src = level(m).first(static_cast<std::size_t>(mesh.J() + 1));
        std::copy(src.begin(), src.end(), out.level(m).begin());
    }
    out.min_relative_pivot = min_relative_pivot;
    return out;
}

// --- stepper -----------------------------------------------------------------

Stepper::Stepper(const ProblemSpec& problem, const Mesh& mesh, const SchemeConfig& config)
    : problem_(problem), mesh_(mesh), config_(config), coeffs_(sample(problem, mesh))
{
    config_.validate();
    if (config_.mode == BoundaryMode::Reference)
        throw ValidationError("stepper: reference mode is handled by march_reference");
    if (config_.mode == BoundaryMode::Dtbc) {
        const KernelParams params =
            derive_params(problem_.tail, mesh_.tail_step(), mesh_.tau(), config_.sigma, config_.theta);
        kernel_ = kernel_by_recurrence(params, mesh_.M());
    }

    // Matrix of the upper level; identical for every m.
    SchemeState dummy = initial_state();
    TridiagonalSystem system(mesh_.J());
    assemble_interior(dummy, 1, system);
    assemble_boundary_row(dummy, 1, system);
    factor_.emplace(system);
}

double Stepper::alpha_coeff(double s, int j) const
{
    const double h = mesh_.h(j);
    const auto k = static_cast<std::size_t>(j);
    return config_.theta * (h * coeffs_.rho_h[k] / mesh_.tau() + s * h * coeffs_.c_h[k]) - s * coeffs_.b_h[k] / h;
}

double Stepper::beta_coeff(double s, int j) const
{
    const double h = mesh_.h(j);
    const auto k = static_cast<std::size_t>(j);
    return (0.5 - config_.theta) * (h * coeffs_.rho_h[k] / mesh_.tau() + s * h * coeffs_.c_h[k]) +
           s * coeffs_.b_h[k] / h;
}

double Stepper::tail_alpha(double s) const
{
    const double h = mesh_.tail_step();
    const TailConstants& t = problem_.tail;
    return config_.theta * (h * t.rho / mesh_.tau() + s * h * t.c) - s * t.b / h;
}

double Stepper::tail_beta(double s) const
{
    const double h = mesh_.tail_step();
    const TailConstants& t = problem_.tail;
    return (0.5 - config_.theta) * (h * t.rho / mesh_.tau() + s * h * t.c) + s * t.b / h;
}

SchemeState Stepper::initial_state() const
{
    SchemeState state;
    state.U = coeffs_.u0_h;
    state.history = {state.U.back()};
    state.m = 0;
    return state;
}

void Stepper::assemble_interior(const SchemeState& state, int m, TridiagonalSystem& system) const
{
    const double sigma = config_.sigma;
    const double lower = sigma - 1.0;
    const int J = mesh_.J();
    const auto& u = state.U;
    for (int j = 1; j < J; ++j) {
        const auto k = static_cast<std::size_t>(j);
        system.sub[k] = alpha_coeff(sigma, j);
        system.diag[k] = beta_coeff(sigma, j) + beta_coeff(sigma, j + 1);
        system.sup[k] = alpha_coeff(sigma, j + 1);
        system.rhs[k] = alpha_coeff(lower, j) * u[k - 1] + (beta_coeff(lower, j) + beta_coeff(lower, j + 1)) * u[k] +
                        alpha_coeff(lower, j + 1) * u[k + 1] + mesh_.h_half(j) * coeffs_.F(j, m);
    }
}

void Stepper::assemble_boundary_row(const SchemeState& state, int m, TridiagonalSystem& system) const
{
    const int J = mesh_.J();
    const auto last = static_cast<std::size_t>(J);
    const double sigma = config_.sigma;

    system.sub[0] = 0.0;
    system.diag[0] = 1.0;
    system.sup[0] = 0.0;
    system.rhs[0] = problem_.g(mesh_.t(m));

    // b dU_J^(sigma) + h s^-(rho dtU + c U^(sigma))_J = b S^m, with S^m the
    // convolution whose q = 0 term lands on the diagonal.
    system.sub[last] = tail_alpha(sigma);
    system.diag[last] = tail_beta(sigma);
    system.sup[last] = 0.0;
    system.rhs[last] = tail_alpha(sigma - 1.0) * state.U[last - 1] + tail_beta(sigma - 1.0) * state.U[last];

    if (kernel_) {
        const double weight = problem_.tail.b / (2.0 * mesh_.tail_step());
        const Kernel& R = *kernel_;
        system.diag[last] -= weight * R[0];
        double history = 0.0;
        for (int q = 1; q <= m; ++q)
            history += R[q] * state.history[static_cast<std::size_t>(m - q)];
        system.rhs[last] += weight * history;
    }
}

TridiagonalSystem Stepper::assemble(const SchemeState& state) const
{
    const int m = state.m + 1;
    if (m > mesh_.M())
        throw ValidationError("stepper: already at the final level");
    TridiagonalSystem system(mesh_.J());
    assemble_interior(state, m, system);
    assemble_boundary_row(state, m, system);
    return system;
}

void Stepper::step(SchemeState& state, const TridiagonalSystem& system) const
{
    std::vector<double> u = factor_->solve(system.rhs);
    u[0] = system.rhs[0];
    state.U = std::move(u);
    state.history.push_back(state.U.back());
    ++state.m;
}

// --- drivers -----------------------------------------------------------------

namespace {

Trajectory march_finite(const ProblemSpec& problem, const Mesh& mesh, const SchemeConfig& config)
{
    Stepper stepper(problem, mesh, config);
    Trajectory traj(mesh, config);
    SchemeState state = stepper.initial_state();
    std::copy(state.U.begin(), state.U.end(), traj.level(0).begin());
    for (int m = 1; m <= mesh.M(); ++m) {
        stepper.advance(state);
        std::copy(state.U.begin(), state.U.end(), traj.level(m).begin());
    }
    traj.min_relative_pivot = stepper.min_relative_pivot();
    return traj;
}

Trajectory march_extended(const ProblemSpec& problem, const Mesh& mesh, const SchemeConfig& config, double factor)
{
    const Mesh big = mesh.extended(factor * mesh.X());
    ProblemSpec wide = problem;
    wide.X = big.X();
    SchemeConfig neumann = config;
    neumann.mode = BoundaryMode::Neumann;
    return march_finite(wide, big, neumann).restricted_to(mesh);
}

} // namespace

Trajectory march(const ProblemSpec& problem, const Mesh& mesh, const SchemeConfig& config)
{
    config.validate();
    if (config.mode == BoundaryMode::Reference)
        return march_reference(problem, mesh, config, config.extension_factor).trajectory;
    return march_finite(problem, mesh, config);
}

ReferenceResult march_reference(const ProblemSpec& problem, const Mesh& mesh, const SchemeConfig& config,
                                double extension_factor, double doubling_tolerance)
{
    if (!(extension_factor >= 2.0))
        throw ValidationError("reference: extension factor must be at least 2");
    sample(problem, mesh); // validates the original problem/mesh pair
    Trajectory coarse = march_extended(problem, mesh, config, extension_factor);
    const Trajectory fine = march_extended(problem, mesh, config, 2.0 * extension_factor);

    double diff = 0.0;
    for (int m = 0; m <= mesh.M(); ++m)
        for (int j = 0; j <= mesh.J(); ++j)
            diff = std::max(diff, std::abs(coarse(j, m) - fine(j, m)));
    if (!(diff <= doubling_tolerance))
        throw NumericalError("reference: far-boundary contamination " + std::to_string(diff) +
                             " exceeds doubling tolerance");

    SchemeConfig tagged = config;
    tagged.mode = BoundaryMode::Reference;
    tagged.extension_factor = extension_factor;
    Trajectory out(mesh, tagged);
    for (int m = 0; m <= mesh.M(); ++m) {
        auto src = coarse.level(m);
        std::copy(src.begin(), src.end(), out.level(m).begin());
    }
    out.min_relative_pivot = coarse.min_relative_pivot;
    return ReferenceResult{std::move(out), diff};
}

} // namespace dtbc
