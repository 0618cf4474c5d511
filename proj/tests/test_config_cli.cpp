#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "dtbc/config.hpp"
#include "dtbc/csv.hpp"
#include "dtbc/error.hpp"

using namespace dtbc;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / ("dtbc_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> lines(const fs::path& p)
{
    std::vector<std::string> out;
    std::ifstream in(p);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        out.push_back(line);
    }
    return out;
}

std::vector<std::string> split(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string f;
    while (std::getline(ss, f, ','))
        out.push_back(f);
    return out;
}

cli::CommandOptions options_for(const fs::path& dir, const std::string& config_text)
{
    const fs::path cfg = dir / "run.cfg";
    std::ofstream(cfg) << config_text;
    cli::CommandOptions o;
    o.config_path = cfg.string();
    o.out_dir = (dir / "out").string();
    o.deterministic = true;
    return o;
}

} // namespace

TEST_CASE("numbers and fractions")
{
    CHECK(parse_number("1/12") == 1.0 / 12.0);
    CHECK(parse_number(" 1 / 1500 ") == 1.0 / 1500.0);
    CHECK(parse_number("0.25") == 0.25);
    CHECK(parse_number("-2e-3") == -2e-3);
    CHECK_THROWS_AS(parse_number("1/0"), ValidationError);
    CHECK_THROWS_AS(parse_number("abc"), ValidationError);
    CHECK_THROWS_AS(parse_number("1.5x"), ValidationError);
}

TEST_CASE("config parsing")
{
    const RunConfig c = parse_config("# comment\n"
                                     "problem = example2   # trailing\n"
                                     "theta = 1/6\n"
                                     "M = 50\n"
                                     "boundary_mode = Neumann\n"
                                     "table_theta = 0, 1/12\n"
                                     "table_M = 5, 10\n"
                                     "emit_kernel = yes\n"
                                     "\n");
    CHECK(c.preset == ProblemPreset::Example2);
    CHECK(*c.theta == 1.0 / 6.0);
    CHECK(*c.M == 50);
    CHECK(c.boundary_mode == BoundaryMode::Neumann);
    CHECK(c.table_theta == std::vector<double>{0.0, 1.0 / 12.0});
    CHECK(c.table_M == std::vector<int>{5, 10});
    CHECK(c.emit_kernel);

    CHECK_THROWS_AS(parse_config("colour = blue\n"), ValidationError);
    CHECK_THROWS_AS(parse_config("theta\n"), ValidationError);
    CHECK_THROWS_AS(parse_config("M = 2.5\n"), ValidationError);
    CHECK_THROWS_AS(parse_config("problem = example3\n"), ValidationError);
    CHECK_THROWS_AS(parse_config("emit_kernel = maybe\n"), ValidationError);
    CHECK_THROWS_AS(load_config("/nonexistent/run.cfg"), ValidationError);
}

TEST_CASE("preset defaults")
{
    const Experiment e1 = build_experiment(parse_config(""));
    CHECK(e1.mesh.J() == 50);
    CHECK(e1.mesh.M() == 1500);
    CHECK(e1.mesh.tau() == 1.0 / 1500.0);
    CHECK(e1.config.sigma == 0.5);
    CHECK(e1.config.theta == 1.0 / 12.0);

    const Experiment e2 = build_experiment(parse_config("problem = example2"));
    CHECK(e2.mesh.J() == 10);
    CHECK(e2.mesh.M() == 100);
    CHECK(e2.mesh.tau() == 0.01);

    const Experiment e3 = build_experiment(parse_config("problem = example2\nM = 20"));
    CHECK(e3.mesh.tau() == doctest::Approx(0.05));

    const Experiment nodes = build_experiment(parse_config("problem = example2\nnodes = 0, 0.3, 0.6, 0.8, 0.9, 1"));
    CHECK(nodes.mesh.J() == 5);

    CHECK_THROWS_AS(build_experiment(parse_config("theta = 0.3")), ValidationError);
    CHECK_THROWS_AS(build_experiment(parse_config("sigma = 0.25")), ValidationError);
    CHECK_THROWS_AS(build_experiment(parse_config("h = 0.07")), ValidationError);
}

TEST_CASE("custom zero problem has a zero solution")
{
    const Experiment e = build_experiment(parse_config("problem = custom\nexact = zero\nX = 2\nh = 0.1\nM = 40\n"
                                                       "rho_interior = 2\nb_interior = 0.5\nc_interior = 1\n"));
    const RunResult r = run(e);
    CHECK(r.error.has_exact);
    CHECK(r.error.max_abs_error == 0.0);
}

TEST_CASE("custom problem with variable coefficients matches its extended reference")
{
    RunConfig c = parse_config("problem = custom\nX = 2\nh = 0.1\nX0 = 1.5\ntau = 0.01\nM = 50\n"
                               "rho_interior = 2\nb_interior = 0.5\nc_interior = 1\n"
                               "rho_inf = 1\nb_inf = 1\nc_inf = 0.5\n"
                               "u0_amplitude = 1\nu0_center = 0.7\nu0_width = 0.5\ng_poly = 0, 0, 1\n");
    const Experiment e = build_experiment(c);
    c.boundary_mode = BoundaryMode::Reference;
    const Experiment ref = build_experiment(c);
    const RunResult a = run(e);
    const RunResult b = run(ref);
    CHECK_FALSE(a.error.has_exact);
    double diff = 0.0;
    for (int m = 0; m <= 50; ++m)
        for (int j = 0; j <= 20; ++j)
            diff = std::max(diff, std::abs(a.trajectory(j, m) - b.trajectory(j, m)));
    CHECK(diff <= 1e-8);
}

TEST_CASE("homogeneous companion")
{
    const Experiment e = build_experiment(parse_config("problem = example2"));
    const ProblemSpec p = homogeneous_companion(e);
    CHECK(p.g(0.5) == 0.0);
    CHECK(p.u0(0.0) == 0.0);
    CHECK(p.u0(0.45) == doctest::Approx(1.0));
    CHECK(p.u0(0.95) == 0.0);

    const Experiment z = build_experiment(parse_config("problem = custom\nX = 1\nh = 0.1\n"));
    CHECK(homogeneous_companion(z).u0(0.5) == 0.0);
}

TEST_CASE("csv formatting")
{
    CHECK(format_double(0.1) == "1.0000000000000001e-01");
    CHECK(format_double(std::nan("")).empty());
    CHECK(csv_escape("plain") == "plain");
    CHECK(csv_escape("a,b") == "\"a,b\"");
    CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
    const fs::path dir = scratch_dir("csv");
    {
        CsvWriter w((dir / "x.csv").string(), {"a", "b"});
        w.field(1).field(std::string("x,y")).end_row();
        CHECK_THROWS_AS(w.field(1).end_row(), NumericalError);
    }
    CHECK(slurp(dir / "x.csv").rfind("a,b\r\n1,\"x,y\"\r\n", 0) == 0);
}

TEST_CASE("solve command writes reproducible artifacts")
{
    const fs::path dir = scratch_dir("solve");
    auto o = options_for(dir, "problem = example2\nrun_diagnostics = true\nemit_kernel = true\n");
    std::ostringstream log;
    REQUIRE(cli::cmd_solve(o, log) == cli::Success);
    const std::string first = slurp(dir / "out" / "solution.csv");
    const std::string report = slurp(dir / "out" / "report.csv");
    REQUIRE(cli::cmd_solve(o, log) == cli::Success);
    CHECK(slurp(dir / "out" / "solution.csv") == first);
    CHECK(slurp(dir / "out" / "report.csv") == report);

    const auto sol = lines(dir / "out" / "solution.csv");
    CHECK(sol.front() == "m,t,j,x,U,exact,error");
    CHECK(sol.size() == 1 + 101 * 11);
    const auto rep = lines(dir / "out" / "report.csv");
    const auto fields = split(rep.at(1));
    CHECK(std::stod(fields.at(8)) == doctest::Approx(4.700e-6).epsilon(1e-3));
    CHECK(fields.at(9) == "1");
    CHECK(fields.at(10) == "1");
    CHECK(lines(dir / "out" / "kernel.csv").size() == 102);
    const auto diag = lines(dir / "out" / "diagnostics.csv");
    CHECK(diag.size() == 6);
    for (std::size_t i = 1; i < diag.size(); ++i)
        CHECK(split(diag[i]).back() == "yes");

    o.deterministic = false;
    REQUIRE(cli::cmd_solve(o, log) == cli::Success);
    CHECK(lines(dir / "out" / "report.csv").front().rfind("# generated ", 0) == 0);
}

TEST_CASE("single-cell table equals the solve error")
{
    const fs::path dir = scratch_dir("table");
    auto o = options_for(dir, "problem = example2\ntheta = 1/6\nM = 50\ntable_theta = 1/6\ntable_M = 50\n");
    std::ostringstream log;
    REQUIRE(cli::cmd_table(o, log) == cli::Success);
    REQUIRE(cli::cmd_solve(o, log) == cli::Success);
    const auto table = lines(dir / "out" / "table.csv");
    REQUIRE(table.size() == 2);
    CHECK(table[0] == "theta,M=50");
    const auto report = split(lines(dir / "out" / "report.csv").at(1));
    CHECK(split(table[1]).at(1) == report.at(8));
}

TEST_CASE("kernel command")
{
    const fs::path dir = scratch_dir("kernel");
    std::ostringstream log;
    auto o = options_for(dir, "problem = example1\nkernel_m_max = 100\n");
    REQUIRE(cli::cmd_kernel(o, log) == cli::Success);
    auto rows = lines(dir / "out" / "kernel.csv");
    CHECK(rows.size() == 102);
    CHECK(rows[0] == "m,R_m,lg_abs_R_m");
    CHECK(std::stod(split(rows[1]).at(1)) < 0.0);

    o.compare = true;
    REQUIRE(cli::cmd_kernel(o, log) == cli::Success);
    CHECK(log.str().find("max |recurrence - legendre|") != std::string::npos);
    CHECK(split(lines(dir / "out" / "kernel.csv").at(1)).size() == 7);

    auto zero = options_for(dir, "kernel_m_max = 0\n");
    REQUIRE(cli::cmd_kernel(zero, log) == cli::Success);
    rows = lines(dir / "out" / "kernel.csv");
    CHECK(rows.size() == 2);
}

TEST_CASE("diagnose command and exit codes")
{
    const fs::path dir = scratch_dir("diagnose");
    std::ostringstream log;
    std::ostringstream err;
    auto o = options_for(dir, "problem = example2\ndissipativity_trials = 100\n");
    o.seed = 5;
    CHECK(cli::guarded(cli::cmd_diagnose, o, log, err) == cli::Success);
    CHECK(lines(dir / "out" / "diagnostics.csv").size() == 8);

    auto bad = options_for(dir, "theta = 1/3\n");
    CHECK(cli::guarded(cli::cmd_solve, bad, log, err) == cli::ValidationFailure);
    CHECK(err.str().find("theta") != std::string::npos);

    auto strict = options_for(dir, "problem = example2\nboundary_mode = reference\nextension_factor = 2\n");
    CHECK(cli::guarded(cli::cmd_solve, strict, log, err) == cli::NumericalFailure);
}
