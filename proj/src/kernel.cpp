#include "dtbc/kernel.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "dtbc/error.hpp"

namespace dtbc {

double KernelParams::scale() const { return 2.0 * a1 * std::sqrt(delta); }

KernelParams derive_params(const TailConstants& tail, double h, double tau, double sigma, double theta)
{
    if (!(tail.rho > 0.0) || !(tail.b > 0.0) || !(tail.c >= 0.0))
        throw ValidationError("kernel: tail constants need rho_inf > 0, b_inf > 0, c_inf >= 0");
    if (!(h > 0.0) || !(tau > 0.0))
        throw ValidationError("kernel: h and tau must be positive");
    if (!(sigma > 0.0))
        throw ValidationError("kernel: sigma must be positive");
    if (!(theta <= 0.25))
        throw ValidationError("kernel: theta must not exceed 1/4");

    KernelParams p;
    p.sigma = sigma;
    p.theta = theta;
    p.h = h;
    p.tau = tau;
    p.tail = tail;
    p.a1 = h * h * tail.rho / (2.0 * tau * tail.b);
    p.a0 = h * h * tail.c / (2.0 * tail.b);
    p.d0 = tail.c / tail.rho * tau;
    p.d1 = 4.0 * tail.b / tail.rho * tau / (h * h);

    const double s0 = 1.0 + sigma * p.d0;
    const double inner = s0 * (1.0 - 4.0 * theta) + sigma * p.d1;
    p.delta = s0 * inner;
    if (!(p.delta > 0.0))
        throw ValidationError("kernel: delta = " + std::to_string(p.delta) + " is not positive");
    p.alpha0 = 1.0 - p.d0 / s0;
    p.alpha1 = 1.0 - (p.d0 * (1.0 - 4.0 * theta) + p.d1) / inner;
    p.alpha = p.alpha0 * p.alpha1;
    p.beta = 0.5 * (p.alpha0 + p.alpha1);

    const double denom = 1.0 - 2.0 * p.a0 * theta;
    if (denom != 0.0)
        p.sigma0 = 2.0 * p.a1 * theta / denom;
    p.supported = sigma >= 0.5;
    return p;
}

Kernel kernel_by_recurrence(const KernelParams& params, int M)
{
    if (M < 0)
        throw ValidationError("kernel: M must be nonnegative");
    std::vector<double> r(static_cast<std::size_t>(M) + 1);
    const double scale = params.scale();
    r[0] = -scale;
    if (M >= 1)
        r[1] = scale * params.beta;
    for (int m = 2; m <= M; ++m) {
        const auto k = static_cast<std::size_t>(m);
        r[k] = (2.0 * m - 3.0) / m * params.beta * r[k - 1] - (m - 3.0) / m * params.alpha * r[k - 2];
    }
    return Kernel(params, std::move(r));
}

std::vector<double> modified_legendre(double alpha, double beta, int M)
{
    std::vector<double> p(static_cast<std::size_t>(M) + 1);
    p[0] = 1.0;
    double pm2 = 0.0;
    for (int m = 1; m <= M; ++m) {
        const auto k = static_cast<std::size_t>(m);
        p[k] = (2.0 * m - 1.0) / m * beta * p[k - 1] - (m - 1.0) / m * alpha * pm2;
        pm2 = p[k - 1];
    }
    return p;
}

Kernel kernel_by_legendre(const KernelParams& params, int M)
{
    if (M < 0)
        throw ValidationError("kernel: M must be nonnegative");
    const std::vector<double> p = modified_legendre(params.alpha, params.beta, M);
    const double scale = params.scale();
    std::vector<double> r(static_cast<std::size_t>(M) + 1);
    for (int m = 0; m <= M; ++m) {
        const auto k = static_cast<std::size_t>(m);
        const double pm2 = m >= 2 ? p[k - 2] : 0.0;
        r[k] = scale / (2.0 * m - 1.0) * (p[k] - params.alpha * pm2);
    }
    return Kernel(params, std::move(r));
}

namespace {

using cplx = std::complex<double>;

// Samples sqrt(alpha z^2 - 2 beta z + 1) (principal branch) on |z| = radius.
// Returns false when consecutive samples straddle the negative real axis.
bool sample_contour(const KernelParams& p, double radius, int n, std::vector<cplx>& out)
{
    out.resize(static_cast<std::size_t>(n));
    std::vector<cplx> w(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const cplx z = std::polar(radius, 2.0 * std::numbers::pi * k / n);
        w[static_cast<std::size_t>(k)] = p.alpha * z * z - 2.0 * p.beta * z + 1.0;
    }
    for (int k = 0; k < n; ++k) {
        const cplx a = w[static_cast<std::size_t>(k)];
        const cplx b = w[static_cast<std::size_t>((k + 1) % n)];
        const bool crosses = a.real() < 0.0 && b.real() < 0.0 && (std::signbit(a.imag()) != std::signbit(b.imag()));
        if (crosses || a == cplx(0.0))
            return false;
        out[static_cast<std::size_t>(k)] = std::sqrt(a);
    }
    return true;
}

} // namespace

std::vector<double> kernel_gf_oracle(const KernelParams& params, int m_max, OracleOptions options)
{
    if (m_max < 0)
        throw ValidationError("oracle: m_max must be nonnegative");
    if (options.quad_points <= 2 * m_max + 1)
        throw ValidationError("oracle: need more quadrature points than 2 m_max + 1");

    double radius = options.radius;
    if (radius <= 0.0) {
        const double largest = std::max(std::abs(params.alpha0), std::abs(params.alpha1));
        radius = largest > 0.0 ? 0.9 / largest : 0.9;
    }

    const int n = options.quad_points;
    std::vector<cplx> root;
    int attempts = 0;
    while (!sample_contour(params, radius, n, root)) {
        if (++attempts > 8)
            throw NumericalError("oracle: contour keeps crossing the branch cut");
        radius *= 0.5;
    }

    const double scale = params.scale();
    std::vector<double> r(static_cast<std::size_t>(m_max) + 1);
    for (int m = 0; m <= m_max; ++m) {
        cplx sum = 0.0;
        for (int k = 0; k < n; ++k) {
            const double phase = -2.0 * std::numbers::pi * static_cast<double>((static_cast<long long>(m) * k) % n) / n;
            sum += root[static_cast<std::size_t>(k)] * std::polar(1.0, phase);
        }
        r[static_cast<std::size_t>(m)] = -scale * sum.real() / n / std::pow(radius, m);
    }
    return r;
}

double convolve(const Kernel& kernel, std::span<const double> history, int m)
{
    if (m < 0 || history.size() < static_cast<std::size_t>(m) + 1)
        throw ValidationError("convolve: history shorter than m + 1");
    if (kernel.M() < m)
        throw ValidationError("convolve: kernel length " + std::to_string(kernel.M() + 1) + " insufficient for level " +
                              std::to_string(m));
    double sum = 0.0;
    for (int q = 0; q <= m; ++q)
        sum += kernel[q] * history[static_cast<std::size_t>(m - q)];
    return sum / (2.0 * kernel.params().h);
}

} // namespace dtbc
