#ifndef DTBC_STEPPER_HPP
#define DTBC_STEPPER_HPP

#include <optional>
#include <span>
#include <vector>

#include "dtbc/kernel.hpp"
#include "dtbc/problem.hpp"

namespace dtbc {

enum class BoundaryMode {
    Dtbc,    // exact discrete transparent condition (convolution with R)
    Neumann, // same boundary row with the convolution dropped
    Reference, // Neumann closure on a domain enlarged by extension_factor
};

const char* to_string(BoundaryMode mode);

struct SchemeConfig {
    double sigma = 0.5;
    double theta = 0.0;
    BoundaryMode mode = BoundaryMode::Dtbc;
    double extension_factor = 5.0;

    // sigma >= 1/2, theta <= 1/4, extension_factor >= 2.
    void validate() const;
};

/// Three-point system for one time level. Row j reads
///   sub[j] U_{j-1} + diag[j] U_j + sup[j] U_{j+1} = rhs[j];
/// row 0 is the Dirichlet row.
struct TridiagonalSystem {
    std::vector<double> sub;
    std::vector<double> diag;
    std::vector<double> sup;
    std::vector<double> rhs;

    explicit TridiagonalSystem(int J = 0);
    int J() const { return static_cast<int>(diag.size()) - 1; }
    // A * u, for residual checks.
    std::vector<double> apply(std::span<const double> u) const;
};

// Thomas elimination; throws NumericalError on a vanishing pivot.
std::vector<double> solve_tridiagonal(const TridiagonalSystem& system);

// LU factors of a fixed tridiagonal matrix, reused for many right-hand sides.
class TridiagonalFactor {
public:
    explicit TridiagonalFactor(const TridiagonalSystem& matrix);
    std::vector<double> solve(std::span<const double> rhs) const;
    // Smallest |pivot| relative to the largest |diagonal| entry.
    double min_relative_pivot() const { return min_relative_pivot_; }

private:
    std::vector<double> sub_;
    std::vector<double> sup_over_pivot_;
    std::vector<double> pivot_;
    double min_relative_pivot_ = 0.0;
};

struct SchemeState {
    std::vector<double> U;       // U^m_0..U^m_J
    std::vector<double> history; // Phi^0..Phi^m, Phi^l = U^l_J
    int m = 0;
};

/// Full space-time solution U^m_j, m = 0..M, j = 0..J.
class Trajectory {
public:
    Trajectory(Mesh mesh, SchemeConfig config);

    const Mesh& mesh() const { return mesh_; }
    const SchemeConfig& config() const { return config_; }
    int J() const { return mesh_.J(); }
    int M() const { return mesh_.M(); }

    double operator()(int j, int m) const { return values_[index(j, m)]; }
    std::span<const double> level(int m) const;
    std::span<double> level(int m);
    std::vector<double> boundary_history() const;

    // Trajectory restricted to the first J+1 nodes of `mesh`.
    Trajectory restricted_to(const Mesh& mesh) const;

    double min_relative_pivot = 0.0;

private:
    std::size_t index(int j, int m) const
    {
        return static_cast<std::size_t>(m) * static_cast<std::size_t>(mesh_.J() + 1) + static_cast<std::size_t>(j);
    }

    Mesh mesh_;
    SchemeConfig config_;
    std::vector<double> values_;
};

/// Time stepper for the (sigma, theta) scheme on a finite mesh with either
/// boundary closure at x_J. The level matrix is factored once.
class Stepper {
public:
    Stepper(const ProblemSpec& problem, const Mesh& mesh, const SchemeConfig& config);

    SchemeState initial_state() const;

    // Rows 1..J-1 for level m (state holds level m-1).
    void assemble_interior(const SchemeState& state, int m, TridiagonalSystem& system) const;
    // Dirichlet row 0 and the boundary row J for level m.
    void assemble_boundary_row(const SchemeState& state, int m, TridiagonalSystem& system) const;
    TridiagonalSystem assemble(const SchemeState& state) const;

    // Solves the level system and appends it to the state.
    void step(SchemeState& state, const TridiagonalSystem& system) const;
    void advance(SchemeState& state) const { step(state, assemble(state)); }

    const Mesh& mesh() const { return mesh_; }
    const SampledCoefficients& coefficients() const { return coeffs_; }
    const std::optional<Kernel>& kernel() const { return kernel_; }
    double min_relative_pivot() const { return factor_->min_relative_pivot(); }

    // Upper/lower level coefficients alpha_{s,j}, beta_{s,j} (s = sigma or sigma - 1).
    double alpha_coeff(double s, int j) const;
    double beta_coeff(double s, int j) const;

private:
    double tail_alpha(double s) const;
    double tail_beta(double s) const;

    ProblemSpec problem_;
    Mesh mesh_;
    SchemeConfig config_;
    SampledCoefficients coeffs_;
    std::optional<Kernel> kernel_;
    std::optional<TridiagonalFactor> factor_;
};

// Reference mode dispatches to march_reference.
Trajectory march(const ProblemSpec& problem, const Mesh& mesh, const SchemeConfig& config);

struct ReferenceResult {
    Trajectory trajectory;         // restricted to the original nodes
    double doubling_difference;    // max |U(factor) - U(2 factor)| on the original nodes
};

/// Brute-force stand-in for the infinite-mesh scheme: the same scheme on
/// [0, factor X] with a Neumann closure at the far end, restricted back to
/// the original nodes. Throws NumericalError when doubling the extension
/// changes the restricted trajectory by more than doubling_tolerance.
ReferenceResult march_reference(const ProblemSpec& problem, const Mesh& mesh, const SchemeConfig& config,
                                double extension_factor, double doubling_tolerance = 1e-9);

} // namespace dtbc

#endif // DTBC_STEPPER_HPP
