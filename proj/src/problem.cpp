#include "dtbc/problem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "dtbc/error.hpp"
#include "dtbc/validation.hpp"

namespace dtbc {

namespace {

constexpr double kRelTol = 1e-12;

std::string describe(const char* what, double x, double value)
{
    std::ostringstream os;
    os << what << " at x = " << x << " (value " << value << ")";
    return os.str();
}

} // namespace

void ProblemSpec::validate() const
{
    if (!rho || !b || !c || !f || !g || !u0)
        throw ValidationError("problem: all coefficient and data functions must be set");
    if (!(X > 0.0) || !(X0 > 0.0) || !(X0 < X))
        throw ValidationError("problem: need 0 < X0 < X");
    if (!(tail.rho > 0.0) || !(tail.b > 0.0) || !(tail.c >= 0.0))
        throw ValidationError("problem: tail constants need rho_inf > 0, b_inf > 0, c_inf >= 0");
    if (!(rho_lower > 0.0) || !(b_lower > 0.0))
        throw ValidationError("problem: lower bounds rho_lower and b_lower must be positive");
    if (!(tail_tolerance >= 0.0))
        throw ValidationError("problem: tail tolerance must be nonnegative");
}

Mesh::Mesh(std::vector<double> nodes, double tau, int M) : nodes_(std::move(nodes)), tau_(tau), M_(M)
{
    if (nodes_.size() < 3)
        throw ValidationError("mesh: need at least J = 2 intervals");
    if (nodes_.front() != 0.0)
        throw ValidationError("mesh: first node must be x_0 = 0");
    for (std::size_t j = 1; j < nodes_.size(); ++j) {
        if (!(nodes_[j] > nodes_[j - 1]))
            throw ValidationError("mesh: nodes must be strictly increasing (zero or negative step at j = " +
                                  std::to_string(j) + ")");
    }
    if (!(tau_ > 0.0) || !std::isfinite(tau_))
        throw ValidationError("mesh: time step must be positive");
    if (M_ < 1)
        throw ValidationError("mesh: need at least one time level");
}

Mesh Mesh::uniform(double X, int J, double tau, int M)
{
    if (!(X > 0.0))
        throw ValidationError("mesh: X must be positive");
    if (J < 2)
        throw ValidationError("mesh: need J >= 2");
    std::vector<double> nodes(static_cast<std::size_t>(J) + 1);
    for (int j = 0; j <= J; ++j)
        nodes[static_cast<std::size_t>(j)] = X * j / J;
    nodes.back() = X;
    return Mesh(std::move(nodes), tau, M);
}

double Mesh::h(int j) const
{
    if (j > J())
        j = J();
    return x(j) - x(j - 1);
}

double Mesh::h_half(int j) const { return 0.5 * (h(j) + h(j + 1)); }

Mesh Mesh::extended(double new_X) const
{
    const double step = tail_step();
    const int extra = static_cast<int>(std::lround((new_X - X()) / step));
    std::vector<double> nodes = nodes_;
    const double base = X();
    for (int k = 1; k <= extra; ++k)
        nodes.push_back(base + k * step);
    return Mesh(std::move(nodes), tau_, M_);
}

Mesh Mesh::with_time(double tau, int M) const { return Mesh(nodes_, tau, M); }

SampledCoefficients sample(const ProblemSpec& problem, const Mesh& mesh)
{
    problem.validate();
    const int J = mesh.J();
    const double X = problem.X;
    if (std::abs(mesh.X() - X) > kRelTol * X)
        throw ValidationError("sample: last mesh node must equal the truncation point X");
    if (mesh.tail_step() > (X - problem.X0) * (1.0 + kRelTol) + kRelTol * X)
        throw ValidationError("sample: last step h_J must not exceed X - X0");

    const double onset = problem.X0 - kRelTol * X;
    auto is_tail = [&](double x) { return x >= onset; };
    auto same = [](double a, double b) { return std::abs(a - b) <= kRelTol * std::max(1.0, std::abs(b)); };

    SampledCoefficients s;
    s.J = J;
    s.M = mesh.M();
    const auto n = static_cast<std::size_t>(J) + 1;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    s.rho_h.assign(n, nan);
    s.b_h.assign(n, nan);
    s.c_h.assign(n, nan);
    s.u0_h.assign(n, 0.0);

    for (int j = 1; j <= J; ++j) {
        const double xm = 0.5 * (mesh.x(j - 1) + mesh.x(j));
        const double r = problem.rho(xm);
        const double bb = problem.b(xm);
        const double cc = problem.c(xm);
        if (!(r >= problem.rho_lower))
            throw ValidationError(describe("sample: rho below rho_lower", xm, r));
        if (!(bb >= problem.b_lower))
            throw ValidationError(describe("sample: b below b_lower", xm, bb));
        if (!(cc >= 0.0))
            throw ValidationError(describe("sample: negative c", xm, cc));
        if (is_tail(xm) &&
            !(same(r, problem.tail.rho) && same(bb, problem.tail.b) && same(cc, problem.tail.c)))
            throw ValidationError(describe("sample: coefficients differ from tail constants", xm, r));
        s.rho_h[static_cast<std::size_t>(j)] = r;
        s.b_h[static_cast<std::size_t>(j)] = bb;
        s.c_h[static_cast<std::size_t>(j)] = cc;
        s.rho_max = std::max(s.rho_max, r);
    }

    for (int j = 0; j <= J; ++j) {
        const double x = mesh.x(j);
        const double v = problem.u0(x);
        if (is_tail(x) && std::abs(v) > problem.tail_tolerance)
            throw ValidationError(describe("sample: u0 does not vanish in the tail", x, v));
        s.u0_h[static_cast<std::size_t>(j)] = v;
    }

    s.forcing.resize(n * (static_cast<std::size_t>(s.M) + 1));
    for (int m = 0; m <= s.M; ++m) {
        const double t = mesh.t(m);
        for (int j = 0; j <= J; ++j) {
            const double x = mesh.x(j);
            const double v = problem.f(x, t);
            if (is_tail(x) && std::abs(v) > problem.tail_tolerance)
                throw ValidationError(describe("sample: f does not vanish in the tail", x, v));
            s.forcing[static_cast<std::size_t>(m) * n + static_cast<std::size_t>(j)] = v;
        }
    }

    const double g0 = problem.g(0.0);
    if (std::abs(s.u0_h[0] - g0) > problem.tail_tolerance) {
        std::ostringstream os;
        os << "u0(0) = " << s.u0_h[0] << " differs from g(0) = " << g0 << "; initial node keeps u0(0)";
        s.warnings.push_back(os.str());
    }
    return s;
}

ProblemSpec heat_problem(double X, double X0, SpaceFunction g, SpaceFunction u0)
{
    ProblemSpec p;
    p.rho = [](double) { return 1.0; };
    p.b = [](double) { return 1.0; };
    p.c = [](double) { return 0.0; };
    p.f = [](double, double) { return 0.0; };
    p.g = std::move(g);
    p.u0 = std::move(u0);
    p.tail = {1.0, 1.0, 0.0};
    p.X = X;
    p.X0 = X0;
    p.rho_lower = 1.0;
    p.b_lower = 1.0;
    return p;
}

ProblemSpec example1_problem(double X, double h)
{
    return heat_problem(
        X, X - h, [](double t) { return u1(0.0, t); }, [](double x) { return u1(x, 0.0); });
}

ProblemSpec example2_problem(double X, double h)
{
    return heat_problem(
        X, X - h, [](double t) { return t * t; }, [](double) { return 0.0; });
}

} // namespace dtbc
