#ifndef DTBC_PROBLEM_HPP
#define DTBC_PROBLEM_HPP

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace dtbc {

using SpaceFunction = std::function<double(double)>;
using SpaceTimeFunction = std::function<double(double, double)>;

// Constant coefficient values on [X0, inf).
struct TailConstants {
    double rho = 1.0;
    double b = 1.0;
    double c = 0.0;
};

/// Initial-boundary value problem for
///   rho u_t - (b u_x)_x + c u = f  on x > 0, t > 0,
///   u(0,t) = g(t),  u(x,0) = u0(x),  u -> 0 as x -> inf,
/// with constant coefficients and vanishing data beyond the tail onset X0.
/// The computational domain is truncated at X > X0.
struct ProblemSpec {
    SpaceFunction rho;
    SpaceFunction b;
    SpaceFunction c;
    SpaceTimeFunction f;
    SpaceFunction g;
    SpaceFunction u0;

    TailConstants tail;
    double X0 = 0.0;
    double X = 0.0;

    // Lower bounds for rho and b (the energy bounds use them).
    double rho_lower = 1.0;
    double b_lower = 1.0;

    // u0 and f only need to be this small (absolutely) at tail nodes.
    double tail_tolerance = 1e-5;

    void validate() const;
};

/// Spatial nodes 0 = x_0 < ... < x_J = X and a uniform time grid t_m = m tau,
/// m = 0..M. Steps beyond x_J are taken equal to the last step h_J.
class Mesh {
public:
    Mesh(std::vector<double> nodes, double tau, int M);

    static Mesh uniform(double X, int J, double tau, int M);

    int J() const { return static_cast<int>(nodes_.size()) - 1; }
    int M() const { return M_; }
    double tau() const { return tau_; }
    double T() const { return M_ * tau_; }
    double X() const { return nodes_.back(); }

    double x(int j) const { return nodes_[static_cast<std::size_t>(j)]; }
    double t(int m) const { return m * tau_; }

    // h_j = x_j - x_{j-1} for 1 <= j <= J; equals the tail step for j > J.
    double h(int j) const;
    // h_{j+1/2} = (h_j + h_{j+1}) / 2 for j >= 1.
    double h_half(int j) const;
    double tail_step() const { return h(J()); }

    std::span<const double> nodes() const { return nodes_; }

    // Same mesh with the uniform tail continued up to (approximately) new_X.
    Mesh extended(double new_X) const;
    // Same spatial mesh, different time grid.
    Mesh with_time(double tau, int M) const;

    bool same_nodes(const Mesh& other) const { return nodes_ == other.nodes_; }

private:
    std::vector<double> nodes_;
    double tau_;
    int M_;
};

/// Coefficients sampled at cell midpoints, forcing and initial data at nodes.
/// Index 0 of the cell arrays is unused (NaN); entries 1..J are valid.
struct SampledCoefficients {
    std::vector<double> rho_h;
    std::vector<double> b_h;
    std::vector<double> c_h;
    std::vector<double> u0_h;   // u0(x_j), j = 0..J
    std::vector<double> forcing; // f(x_j, t_m), stored row-major by level m
    int J = 0;
    int M = 0;
    double rho_max = 0.0;
    std::vector<std::string> warnings;

    double F(int j, int m) const
    {
        return forcing[static_cast<std::size_t>(m) * static_cast<std::size_t>(J + 1) + static_cast<std::size_t>(j)];
    }
    std::span<const double> F_level(int m) const
    {
        return std::span<const double>(forcing).subspan(static_cast<std::size_t>(m) * static_cast<std::size_t>(J + 1),
                                                        static_cast<std::size_t>(J + 1));
    }
};

// Checks the mesh against the problem (x_J = X, h_J <= X - X0) and samples.
SampledCoefficients sample(const ProblemSpec& problem, const Mesh& mesh);

// Heat equation presets. Example 1 is the spreading Gaussian with x* = 1.25,
// t0 = 1/32 on X = 2.5; example 2 has g(t) = t^2, u0 = 0 on X = 1. The tail
// onset is placed one step h before X.
ProblemSpec example1_problem(double X = 2.5, double h = 0.05);
ProblemSpec example2_problem(double X = 1.0, double h = 0.1);

// Constant-coefficient heat equation with the given data.
ProblemSpec heat_problem(double X, double X0, SpaceFunction g, SpaceFunction u0);

} // namespace dtbc

#endif // DTBC_PROBLEM_HPP
