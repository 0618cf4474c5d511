#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "dtbc/error.hpp"
#include "dtbc/experiments.hpp"
#include "dtbc/stepper.hpp"

using namespace dtbc;

namespace {

ProblemSpec zero_heat(double X, double h)
{
    return heat_problem(X, X - h, [](double) { return 0.0; }, [](double) { return 0.0; });
}

double max_abs(const Trajectory& t)
{
    double v = 0.0;
    for (int m = 0; m <= t.M(); ++m)
        for (double x : t.level(m))
            v = std::max(v, std::abs(x));
    return v;
}

} // namespace

TEST_CASE("tridiagonal solver")
{
    SUBCASE("identity")
    {
        TridiagonalSystem s(4);
        std::fill(s.diag.begin(), s.diag.end(), 1.0);
        s.rhs = {1.0, -2.0, 3.0, 4.5, 0.25};
        CHECK(solve_tridiagonal(s) == s.rhs);
    }
    SUBCASE("manufactured solution, direct and factored")
    {
        std::mt19937_64 rng(42);
        std::uniform_real_distribution<double> d(-1.0, 1.0);
        const int J = 200;
        TridiagonalSystem s(J);
        std::vector<double> exact(static_cast<std::size_t>(J) + 1);
        for (int j = 0; j <= J; ++j) {
            const auto k = static_cast<std::size_t>(j);
            s.sub[k] = j > 0 ? d(rng) : 0.0;
            s.sup[k] = j < J ? d(rng) : 0.0;
            s.diag[k] = 2.5 + d(rng);
            exact[k] = d(rng);
        }
        s.rhs = s.apply(exact);
        const auto u = solve_tridiagonal(s);
        const auto v = TridiagonalFactor(s).solve(s.rhs);
        for (std::size_t k = 0; k < exact.size(); ++k) {
            CHECK(std::abs(u[k] - exact[k]) <= 1e-12 * std::max(1.0, std::abs(exact[k])));
            CHECK(std::abs(v[k] - exact[k]) <= 1e-12 * std::max(1.0, std::abs(exact[k])));
        }
    }
    SUBCASE("vanishing pivot")
    {
        TridiagonalSystem s(2);
        s.diag = {1.0, 0.0, 1.0};
        s.sup = {0.0, 1.0, 0.0};
        s.sub = {0.0, 0.0, 1.0};
        s.rhs = {1.0, 1.0, 1.0};
        CHECK_THROWS_AS(solve_tridiagonal(s), NumericalError);
    }
}

TEST_CASE("interior coefficients on the unit heat mesh")
{
    const ProblemSpec p = zero_heat(5.0, 1.0);
    const Mesh mesh = Mesh::uniform(5.0, 5, 1.0, 3);
    const Stepper st(p, mesh, SchemeConfig{1.0, 0.0, BoundaryMode::Neumann});
    CHECK(st.alpha_coeff(1.0, 2) == -1.0);
    CHECK(st.beta_coeff(1.0, 2) == 1.5);
    CHECK(st.alpha_coeff(0.0, 2) == 0.0);
    CHECK(st.beta_coeff(0.0, 2) == 0.5);

    SchemeState state = st.initial_state();
    const TridiagonalSystem sys = st.assemble(state);
    for (int j = 1; j < 5; ++j) {
        const auto k = static_cast<std::size_t>(j);
        CHECK(sys.sub[k] == -1.0);
        CHECK(sys.diag[k] == 3.0);
        CHECK(sys.sup[k] == -1.0);
        CHECK(sys.rhs[k] == 0.0);
    }
}

TEST_CASE("lower-level weights couple only the centre node")
{
    ProblemSpec p = zero_heat(5.0, 1.0);
    p.u0 = [](double x) { return x < 3.5 ? std::sin(x) : 0.0; };
    const Mesh mesh = Mesh::uniform(5.0, 5, 1.0, 1);
    const Stepper st(p, mesh, SchemeConfig{1.0, 0.0, BoundaryMode::Neumann});
    const SchemeState state = st.initial_state();
    const TridiagonalSystem sys = st.assemble(state);
    for (int j = 1; j < 5; ++j)
        CHECK(sys.rhs[static_cast<std::size_t>(j)] == doctest::Approx(state.U[static_cast<std::size_t>(j)]));
}

TEST_CASE("DTBC row differs from the Neumann row by the leading kernel term only")
{
    const ProblemSpec p = example2_problem();
    const Mesh mesh = Mesh::uniform(1.0, 10, 0.01, 5);
    const Stepper dtbc(p, mesh, SchemeConfig{0.5, 1.0 / 12.0, BoundaryMode::Dtbc});
    const Stepper neumann(p, mesh, SchemeConfig{0.5, 1.0 / 12.0, BoundaryMode::Neumann});
    const TridiagonalSystem a = dtbc.assemble(dtbc.initial_state());
    const TridiagonalSystem b = neumann.assemble(neumann.initial_state());
    REQUIRE(dtbc.kernel().has_value());
    const double R0 = (*dtbc.kernel())[0];
    CHECK(a.sub[10] == b.sub[10]);
    CHECK(a.rhs[10] == b.rhs[10]);
    CHECK(a.diag[10] - b.diag[10] == doctest::Approx(-R0 / (2.0 * 0.1)).epsilon(1e-14));
    CHECK(a.diag[10] != b.diag[10]);
    for (int j = 0; j < 10; ++j) {
        const auto k = static_cast<std::size_t>(j);
        CHECK(a.diag[k] == b.diag[k]);
        CHECK(a.rhs[k] == b.rhs[k]);
    }
}

TEST_CASE("zero data stays zero")
{
    const ProblemSpec p = zero_heat(1.0, 0.1);
    const Mesh mesh = Mesh::uniform(1.0, 10, 0.01, 20);
    for (BoundaryMode mode : {BoundaryMode::Neumann, BoundaryMode::Dtbc, BoundaryMode::Reference}) {
        const Trajectory t = march(p, mesh, SchemeConfig{0.5, 1.0 / 6.0, mode});
        CHECK(max_abs(t) == 0.0);
    }
}

TEST_CASE("first DTBC level equals the extended-domain reference")
{
    const ProblemSpec p = example2_problem();
    const Mesh mesh = Mesh::uniform(1.0, 10, 0.01, 1);
    const SchemeConfig cfg{0.5, 1.0 / 12.0, BoundaryMode::Dtbc};
    const Trajectory t = march(p, mesh, cfg);
    const ReferenceResult ref = march_reference(p, mesh, cfg, 5.0);
    CHECK(std::abs(t(10, 1) - ref.trajectory(10, 1)) <= 1e-12);
}

TEST_CASE("reference extension is stable under doubling for short times")
{
    const ProblemSpec p = example2_problem();
    const Mesh mesh = Mesh::uniform(1.0, 10, 0.01, 10);
    const ReferenceResult ref = march_reference(p, mesh, SchemeConfig{0.5, 0.0, BoundaryMode::Dtbc}, 2.0);
    CHECK(ref.doubling_difference <= 1e-10);
    CHECK(ref.trajectory.J() == 10);
    CHECK(ref.trajectory.config().mode == BoundaryMode::Reference);
}

TEST_CASE("reference march reports a failed doubling check")
{
    const ProblemSpec p = example2_problem();
    const Mesh mesh = Mesh::uniform(1.0, 10, 0.01, 100);
    CHECK_THROWS_AS(march_reference(p, mesh, SchemeConfig{0.5, 0.0, BoundaryMode::Dtbc}, 2.0, 1e-14), NumericalError);
}

TEST_CASE("scheme configuration validation")
{
    const ProblemSpec p = example2_problem();
    const Mesh mesh = Mesh::uniform(1.0, 10, 0.01, 2);
    CHECK_THROWS_AS(Stepper(p, mesh, SchemeConfig{0.4, 0.0, BoundaryMode::Dtbc}), ValidationError);
    CHECK_THROWS_AS(Stepper(p, mesh, SchemeConfig{0.5, 0.26, BoundaryMode::Dtbc}), ValidationError);
    CHECK_THROWS_AS(Stepper(p, mesh, SchemeConfig{0.5, 0.0, BoundaryMode::Reference}), ValidationError);
    CHECK_THROWS_AS(march(p, mesh, SchemeConfig{0.5, 0.0, BoundaryMode::Reference, 1.5}), ValidationError);
}

TEST_CASE("stepping past the last level is rejected")
{
    const ProblemSpec p = example2_problem();
    const Mesh mesh = Mesh::uniform(1.0, 10, 0.01, 1);
    const Stepper st(p, mesh, SchemeConfig{});
    SchemeState s = st.initial_state();
    st.advance(s);
    CHECK(s.m == 1);
    CHECK(s.history.size() == 2);
    CHECK(s.U[0] == doctest::Approx(1e-4));
    CHECK_THROWS_AS(st.advance(s), ValidationError);
}

TEST_CASE("example runs reach the expected accuracy")
{
    const RunResult e1 = run(example1(1.0 / 12.0, 1500));
    CHECK(e1.error.max_abs_error > 1e-7);
    CHECK(e1.error.max_abs_error < 1e-5);

    const RunResult n2 = run(example2(1.0 / 12.0, 100, BoundaryMode::Neumann));
    CHECK(n2.error.max_abs_error > 0.075);
    CHECK(n2.error.max_abs_error < 0.3);
}

TEST_CASE("nonuniform interior mesh with DTBC stays close to the reference")
{
    const ProblemSpec p = example2_problem();
    std::vector<double> nodes{0.0, 0.05, 0.12, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    const Mesh mesh(nodes, 0.01, 50);
    const SchemeConfig cfg{0.5, 1.0 / 12.0, BoundaryMode::Dtbc};
    const Trajectory t = march(p, mesh, cfg);
    const ReferenceResult ref = march_reference(p, mesh, cfg, 5.0);
    double diff = 0.0;
    for (int m = 0; m <= 50; ++m)
        for (int j = 0; j <= mesh.J(); ++j)
            diff = std::max(diff, std::abs(t(j, m) - ref.trajectory(j, m)));
    CHECK(diff <= 1e-8);
}
