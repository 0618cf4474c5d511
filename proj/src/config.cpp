#include "dtbc/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "dtbc/error.hpp"

namespace dtbc {

namespace {

std::string trim(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::string lower(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::vector<std::string> split_list(const std::string& value)
{
    std::vector<std::string> items;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty())
            items.push_back(item);
    }
    return items;
}

double parse_plain(const std::string& text)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw ValidationError("config: not a number: '" + text + "'");
    }
    if (used != text.size())
        throw ValidationError("config: not a number: '" + text + "'");
    return v;
}

int parse_int(const std::string& text)
{
    const double v = parse_number(text);
    if (v != std::floor(v) || std::abs(v) > 1e9)
        throw ValidationError("config: not an integer: '" + text + "'");
    return static_cast<int>(v);
}

bool parse_bool(const std::string& text)
{
    const std::string v = lower(text);
    if (v == "true" || v == "yes" || v == "1" || v == "on")
        return true;
    if (v == "false" || v == "no" || v == "0" || v == "off")
        return false;
    throw ValidationError("config: not a boolean: '" + text + "'");
}

std::vector<double> parse_numbers(const std::string& value)
{
    std::vector<double> out;
    for (const auto& item : split_list(value))
        out.push_back(parse_number(item));
    return out;
}

double smooth_weight(double x, double X0)
{
    if (x >= X0)
        return 0.0;
    const double c = std::cos(std::numbers::pi * x / (2.0 * X0));
    return c * c;
}

} // namespace

double parse_number(const std::string& text)
{
    const std::string t = trim(text);
    const auto slash = t.find('/');
    if (slash == std::string::npos)
        return parse_plain(t);
    const double num = parse_plain(trim(t.substr(0, slash)));
    const double den = parse_plain(trim(t.substr(slash + 1)));
    if (den == 0.0)
        throw ValidationError("config: zero denominator in '" + text + "'");
    return num / den;
}

const char* to_string(ProblemPreset preset)
{
    switch (preset) {
    case ProblemPreset::Example1:
        return "example1";
    case ProblemPreset::Example2:
        return "example2";
    case ProblemPreset::Custom:
        return "custom";
    }
    return "unknown";
}

RunConfig parse_config(const std::string& text)
{
    RunConfig c;
    std::stringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError("config line " + std::to_string(line_no) + ": expected 'key = value'");
        const std::string key = lower(trim(line.substr(0, eq)));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "problem") {
            const std::string v = lower(value);
            if (v == "example1")
                c.preset = ProblemPreset::Example1;
            else if (v == "example2")
                c.preset = ProblemPreset::Example2;
            else if (v == "custom")
                c.preset = ProblemPreset::Custom;
            else
                throw ValidationError("config: unknown problem '" + value + "'");
        } else if (key == "sigma") {
            c.sigma = parse_number(value);
        } else if (key == "theta") {
            c.theta = parse_number(value);
        } else if (key == "h") {
            c.h = parse_number(value);
        } else if (key == "nodes") {
            c.nodes = parse_numbers(value);
        } else if (key == "x") {
            c.X = parse_number(value);
        } else if (key == "tau") {
            c.tau = parse_number(value);
        } else if (key == "m") {
            c.M = parse_int(value);
        } else if (key == "boundary_mode") {
            const std::string v = lower(value);
            if (v == "dtbc")
                c.boundary_mode = BoundaryMode::Dtbc;
            else if (v == "neumann")
                c.boundary_mode = BoundaryMode::Neumann;
            else if (v == "reference")
                c.boundary_mode = BoundaryMode::Reference;
            else
                throw ValidationError("config: unknown boundary_mode '" + value + "'");
        } else if (key == "extension_factor") {
            c.extension_factor = parse_number(value);
        } else if (key == "output_dir") {
            c.output_dir = value;
        } else if (key == "emit_snapshots") {
            c.emit_snapshots = parse_bool(value);
        } else if (key == "snapshot_stride") {
            c.snapshot_stride = parse_int(value);
        } else if (key == "emit_kernel") {
            c.emit_kernel = parse_bool(value);
        } else if (key == "run_diagnostics") {
            c.run_diagnostics = parse_bool(value);
        } else if (key == "table_m") {
            for (const auto& item : split_list(value))
                c.table_M.push_back(parse_int(item));
        } else if (key == "table_theta") {
            c.table_theta = parse_numbers(value);
        } else if (key == "kernel_m_max") {
            c.kernel_m_max = parse_int(value);
        } else if (key == "oracle_m_max") {
            c.oracle_m_max = parse_int(value);
        } else if (key == "dissipativity_trials") {
            c.dissipativity_trials = parse_int(value);
        } else if (key == "dissipativity_m") {
            c.dissipativity_M = parse_int(value);
        } else if (key == "seed") {
            c.seed = static_cast<std::uint64_t>(parse_int(value));
        } else if (key == "rho_inf") {
            c.tail.rho = parse_number(value);
        } else if (key == "b_inf") {
            c.tail.b = parse_number(value);
        } else if (key == "c_inf") {
            c.tail.c = parse_number(value);
        } else if (key == "rho_interior") {
            c.interior.rho = parse_number(value);
        } else if (key == "b_interior") {
            c.interior.b = parse_number(value);
        } else if (key == "c_interior") {
            c.interior.c = parse_number(value);
        } else if (key == "x0") {
            c.X0 = parse_number(value);
        } else if (key == "g_poly") {
            c.g_poly = parse_numbers(value);
        } else if (key == "u0_amplitude") {
            c.u0_amplitude = parse_number(value);
        } else if (key == "u0_center") {
            c.u0_center = parse_number(value);
        } else if (key == "u0_width") {
            c.u0_width = parse_number(value);
        } else if (key == "exact") {
            c.exact = lower(value);
            if (c.exact != "none" && c.exact != "zero")
                throw ValidationError("config: exact must be 'none' or 'zero'");
        } else {
            throw ValidationError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        }
    }
    if (c.snapshot_stride < 1)
        throw ValidationError("config: snapshot_stride must be >= 1");
    return c;
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ValidationError("config: cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

namespace {

ProblemSpec custom_problem(const RunConfig& c, double X, double h_last)
{
    const double X0 = c.X0.value_or(X - h_last);
    const TailConstants tail = c.tail;
    const TailConstants inner = c.interior;
    auto blend = [X0](double interior, double tail_value) {
        return [=](double x) { return tail_value + (interior - tail_value) * smooth_weight(x, X0); };
    };

    ProblemSpec p;
    p.rho = blend(inner.rho, tail.rho);
    p.b = blend(inner.b, tail.b);
    p.c = blend(inner.c, tail.c);
    p.f = [](double, double) { return 0.0; };
    const std::vector<double> poly = c.g_poly;
    p.g = [poly](double t) {
        double v = 0.0;
        for (auto it = poly.rbegin(); it != poly.rend(); ++it)
            v = v * t + *it;
        return v;
    };
    const double amp = c.u0_amplitude;
    const double centre = c.u0_center;
    const double width = c.u0_width;
    p.u0 = [=](double x) {
        if (amp == 0.0 || width <= 0.0 || std::abs(x - centre) >= width)
            return 0.0;
        const double w = std::cos(std::numbers::pi * (x - centre) / (2.0 * width));
        return amp * w * w;
    };
    p.tail = tail;
    p.X = X;
    p.X0 = X0;
    p.rho_lower = std::min(inner.rho, tail.rho);
    p.b_lower = std::min(inner.b, tail.b);
    return p;
}

} // namespace

Experiment build_experiment(const RunConfig& c)
{
    double sigma = 0.5;
    double theta = 1.0 / 12.0;
    double h = 0.1;
    double X = 1.0;
    double tau = 0.01;
    int M = 100;
    switch (c.preset) {
    case ProblemPreset::Example1:
        h = 0.05;
        X = 2.5;
        tau = 1.0 / 1500.0;
        M = 1500;
        break;
    case ProblemPreset::Example2:
        break;
    case ProblemPreset::Custom:
        theta = 0.0;
        break;
    }
    sigma = c.sigma.value_or(sigma);
    theta = c.theta.value_or(theta);
    h = c.h.value_or(h);
    X = c.X.value_or(X);
    if (c.M && c.tau) {
        M = *c.M;
        tau = *c.tau;
    } else if (c.M) {
        M = *c.M;
        tau = 1.0 / M;
    } else if (c.tau) {
        tau = *c.tau;
        M = static_cast<int>(std::lround(1.0 / tau));
    }
    if (M < 1 || !(tau > 0.0))
        throw ValidationError("config: need M >= 1 and tau > 0");

    std::optional<Mesh> mesh;
    if (!c.nodes.empty()) {
        mesh.emplace(c.nodes, tau, M);
        X = mesh->X();
    } else {
        if (!(h > 0.0) || !(X > 0.0))
            throw ValidationError("config: need h > 0 and X > 0");
        const long J = std::lround(X / h);
        if (J < 2 || std::abs(J * h - X) > 1e-9 * X)
            throw ValidationError("config: X must be a multiple of h with at least two steps");
        mesh.emplace(Mesh::uniform(X, static_cast<int>(J), tau, M));
    }

    const SchemeConfig scheme{sigma, theta, c.boundary_mode, c.extension_factor};
    scheme.validate();

    const double h_last = mesh->tail_step();
    switch (c.preset) {
    case ProblemPreset::Example1:
        return Experiment{example1_problem(X, h_last), example1_exact(), *mesh, scheme};
    case ProblemPreset::Example2:
        return Experiment{example2_problem(X, h_last), example2_exact(), *mesh, scheme};
    case ProblemPreset::Custom:
        break;
    }
    return Experiment{custom_problem(c, X, h_last), c.exact == "zero" ? zero_exact() : ExactSolution{"none", {}},
                      *mesh, scheme};
}

ProblemSpec homogeneous_companion(const Experiment& e)
{
    bool homogeneous = e.problem.u0(0.0) == 0.0;
    for (int m = 0; m <= e.mesh.M() && homogeneous; ++m)
        homogeneous = e.problem.g(e.mesh.t(m)) == 0.0;
    if (homogeneous)
        return e.problem;

    ProblemSpec p = e.problem;
    const double X0 = p.X0;
    p.g = [](double) { return 0.0; };
    p.u0 = [X0](double x) {
        if (x >= X0)
            return 0.0;
        const double s = std::sin(std::numbers::pi * x / X0);
        return s * s;
    };
    return p;
}

} // namespace dtbc
