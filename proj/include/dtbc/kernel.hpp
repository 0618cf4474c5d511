#ifndef DTBC_KERNEL_HPP
#define DTBC_KERNEL_HPP

#include <optional>
#include <span>
#include <vector>

#include "dtbc/problem.hpp"

namespace dtbc {

/// Scalars that determine the discrete transparent boundary kernel for the
/// (sigma, theta) scheme with uniform tail step h and time step tau.
///
/// The kernel is the coefficient sequence of
///   -2 a1 sqrt(delta) sqrt(alpha z^2 - 2 beta z + 1),
/// and alpha z^2 - 2 beta z + 1 = (1 - alpha0 z)(1 - alpha1 z).
struct KernelParams {
    double sigma = 0.5;
    double theta = 0.0;
    double h = 0.0;
    double tau = 0.0;
    TailConstants tail;

    double a1 = 0.0; // h^2 rho_inf / (2 tau b_inf)
    double a0 = 0.0; // h^2 c_inf / (2 b_inf)
    double d0 = 0.0; // (c_inf / rho_inf) tau
    double d1 = 0.0; // 4 (b_inf / rho_inf) tau / h^2
    double alpha0 = 0.0;
    double alpha1 = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    double delta = 0.0;
    // Weight at which the leading coefficient of the tail equation vanishes;
    // empty when 2 a0 theta = 1.
    std::optional<double> sigma0;
    // False for sigma < 1/2: the kernel is computable but not dissipative.
    bool supported = true;

    double scale() const; // 2 a1 sqrt(delta)
};

KernelParams derive_params(const TailConstants& tail, double h, double tau, double sigma, double theta);

class Kernel {
public:
    Kernel(KernelParams params, std::vector<double> values) : params_(params), values_(std::move(values)) {}

    const KernelParams& params() const { return params_; }
    std::span<const double> values() const { return values_; }
    double operator[](int m) const { return values_[static_cast<std::size_t>(m)]; }
    // Highest available index.
    int M() const { return static_cast<int>(values_.size()) - 1; }

private:
    KernelParams params_;
    std::vector<double> values_;
};

// Production route: three-term recurrence for R^m directly.
Kernel kernel_by_recurrence(const KernelParams& params, int M);

// Closed form through the modified Legendre quantities p_m; test route.
Kernel kernel_by_legendre(const KernelParams& params, int M);

// p_0..p_M with p_m = ((2m-1)/m) beta p_{m-1} - ((m-1)/m) alpha p_{m-2}.
std::vector<double> modified_legendre(double alpha, double beta, int M);

struct OracleOptions {
    // Contour radius; 0 selects 0.9 times the convergence radius of the series.
    double radius = 0.0;
    int quad_points = 4096;
};

/// Taylor coefficients R^0..R^{m_max} of the kernel's generating function,
/// extracted by the trapezoidal rule on the circle |z| = radius. The radius
/// is halved (up to a few times) when the samples cross the branch cut of the
/// principal square root; persistent crossing throws NumericalError.
std::vector<double> kernel_gf_oracle(const KernelParams& params, int m_max, OracleOptions options = {});

/// (1/(2h)) sum_{q=0}^{m} R^q Phi^{m-q}; needs history Phi^0..Phi^m.
double convolve(const Kernel& kernel, std::span<const double> history, int m);

} // namespace dtbc

#endif // DTBC_KERNEL_HPP
