#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "dtbc/csv.hpp"
#include "dtbc/error.hpp"
#include "dtbc/experiments.hpp"
#include "dtbc/kernel.hpp"
#include "dtbc/validation.hpp"

namespace dtbc::cli {

namespace {

namespace fs = std::filesystem;

std::optional<std::string> stamp(const CommandOptions& options)
{
    if (options.deterministic)
        return std::nullopt;
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buf[64];
    std::strftime(buf, sizeof buf, "generated %Y-%m-%dT%H:%M:%SZ", &utc);
    return std::string(buf);
}

std::string output_path(const RunConfig& config, const std::string& name)
{
    const fs::path dir(config.output_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw ValidationError("cannot create output directory '" + config.output_dir + "': " + ec.message());
    return (dir / name).string();
}

KernelParams kernel_params(const Experiment& e)
{
    return derive_params(e.problem.tail, e.mesh.tail_step(), e.mesh.tau(), e.config.sigma, e.config.theta);
}

void write_kernel_csv(const std::string& path, const Kernel& kernel, const CommandOptions& options)
{
    CsvWriter csv(path, {"m", "R_m", "lg_abs_R_m"}, stamp(options));
    for (int m = 0; m <= kernel.M(); ++m)
        csv.field(m).field(kernel[m]).field(std::log10(std::abs(kernel[m]))).end_row();
}

struct Check {
    std::string name;
    double value;
    double threshold;
    bool upper; // value must be <= threshold, else >= threshold
    bool applicable = true;

    bool passed() const { return !applicable || (upper ? value <= threshold : value >= threshold); }
};

std::vector<Check> energy_checks(const Experiment& experiment)
{
    Experiment companion = experiment;
    companion.problem = homogeneous_companion(experiment);
    if (companion.config.mode == BoundaryMode::Reference)
        companion.config.mode = BoundaryMode::Dtbc;
    const Trajectory trajectory = march(companion.problem, companion.mesh, companion.config);
    std::optional<Kernel> kernel;
    if (companion.config.mode == BoundaryMode::Dtbc)
        kernel = kernel_by_recurrence(kernel_params(companion), companion.mesh.M());
    const EnergyDiagnostics d = diagnose_energy(trajectory, companion.problem, kernel ? &*kernel : nullptr);
    return {
        {"energy_equality_1", d.first_equality, 1e-10, true},
        {"energy_equality_2", d.second_equality, 1e-10, true},
        {"energy_bound_1_slack", d.bound_sb_slack, 0.0, false, d.bounds_applicable},
        {"energy_bound_2_slack", d.bound_sba_slack, 0.0, false, d.bounds_applicable},
        {"min_relative_pivot", trajectory.min_relative_pivot, 1e-14, false},
    };
}

bool write_checks(const std::string& path, const std::vector<Check>& checks, const CommandOptions& options,
                  std::ostream& log)
{
    CsvWriter csv(path, {"check", "value", "threshold", "pass"}, stamp(options));
    bool all = true;
    for (const auto& c : checks) {
        const char* verdict = !c.applicable ? "skipped" : (c.passed() ? "yes" : "no");
        csv.field(c.name).field(c.value).field(c.threshold).field(std::string(verdict)).end_row();
        log << c.name << " = " << format_double(c.value) << " (" << verdict << ")\n";
        all = all && c.passed();
    }
    return all;
}

std::vector<double> default_thetas(const RunConfig& config, const Experiment& e)
{
    if (!config.table_theta.empty())
        return config.table_theta;
    switch (config.preset) {
    case ProblemPreset::Example1:
        return {0.0, 1.0 / 12.0};
    case ProblemPreset::Example2:
        return {0.0, 1.0 / 12.0, 1.0 / 6.0, 0.25};
    case ProblemPreset::Custom:
        break;
    }
    return {e.config.theta};
}

std::vector<int> default_levels(const RunConfig& config, const Experiment& e)
{
    if (!config.table_M.empty())
        return config.table_M;
    switch (config.preset) {
    case ProblemPreset::Example1:
        return {20, 50, 100, 200, 500, 1000, 2000};
    case ProblemPreset::Example2:
        return {5, 10, 20, 50, 100, 200};
    case ProblemPreset::Custom:
        break;
    }
    return {e.mesh.M()};
}

} // namespace

RunConfig resolve_config(const CommandOptions& options)
{
    RunConfig config = options.config_path ? load_config(*options.config_path) : RunConfig{};
    if (options.out_dir)
        config.output_dir = *options.out_dir;
    if (options.seed)
        config.seed = *options.seed;
    return config;
}

int cmd_solve(const CommandOptions& options, std::ostream& log)
{
    const RunConfig config = resolve_config(options);
    const Experiment experiment = build_experiment(config);
    const RunResult result = run(experiment);
    const Trajectory& traj = result.trajectory;
    const Mesh& mesh = traj.mesh();

    for (const auto& w : result.warnings)
        log << "warning: " << w << '\n';

    if (config.emit_snapshots) {
        CsvWriter csv(output_path(config, "solution.csv"), {"m", "t", "j", "x", "U", "exact", "error"},
                      stamp(options));
        const bool has_exact = static_cast<bool>(experiment.exact.value);
        for (int m = 0; m <= mesh.M(); m += config.snapshot_stride) {
            for (int j = 0; j <= mesh.J(); ++j) {
                const double u = traj(j, m);
                const double exact = has_exact ? experiment.exact.value(mesh.x(j), mesh.t(m)) : std::nan("");
                csv.field(m).field(mesh.t(m)).field(j).field(mesh.x(j)).field(u).field(exact);
                csv.field(has_exact ? std::abs(u - exact) : std::nan("")).end_row();
            }
        }
    }

    const ErrorReport& err = result.error;
    {
        CsvWriter csv(output_path(config, "report.csv"),
                      {"problem", "boundary_mode", "sigma", "theta", "J", "M", "tau", "X", "max_abs_error",
                       "argmax_j", "argmax_m", "argmax_x", "argmax_t", "runtime_seconds"},
                      stamp(options));
        csv.field(std::string(to_string(config.preset)))
            .field(std::string(to_string(experiment.config.mode)))
            .field(experiment.config.sigma)
            .field(experiment.config.theta)
            .field(mesh.J())
            .field(mesh.M())
            .field(mesh.tau())
            .field(mesh.X());
        if (err.has_exact)
            csv.field(err.max_abs_error).field(err.argmax_j).field(err.argmax_m).field(mesh.x(err.argmax_j)).field(
                mesh.t(err.argmax_m));
        else
            csv.field(std::string()).field(std::string()).field(std::string()).field(std::string()).field(
                std::string());
        // blank under --deterministic
        csv.field(options.deterministic ? std::nan("") : result.runtime_seconds).end_row();
    }

    log << "problem " << to_string(config.preset) << ", mode " << to_string(experiment.config.mode) << ", J "
        << mesh.J() << ", M " << mesh.M() << '\n';
    if (err.has_exact)
        log << "max abs error " << format_double(err.max_abs_error) << " at j=" << err.argmax_j
            << ", m=" << err.argmax_m << '\n';

    if (config.emit_kernel) {
        const Kernel kernel = kernel_by_recurrence(kernel_params(experiment), config.kernel_m_max.value_or(mesh.M()));
        write_kernel_csv(output_path(config, "kernel.csv"), kernel, options);
    }
    if (config.run_diagnostics) {
        if (!write_checks(output_path(config, "diagnostics.csv"), energy_checks(experiment), options, log))
            return NumericalFailure;
    }
    return Success;
}

int cmd_table(const CommandOptions& options, std::ostream& log)
{
    const RunConfig config = resolve_config(options);
    const Experiment base = build_experiment(config);
    const std::vector<double> thetas = default_thetas(config, base);
    const std::vector<int> levels = default_levels(config, base);
    for (double theta : thetas) {
        SchemeConfig s = base.config;
        s.theta = theta;
        s.validate();
    }
    for (int M : levels) {
        if (M < 1)
            throw ValidationError("table: M must be >= 1");
    }
    if (!base.exact.value)
        throw ValidationError("table: the problem has no exact solution");

    const ErrorTable table = error_table_for(base, thetas, levels);

    std::vector<std::string> header{"theta"};
    for (int M : levels)
        header.push_back("M=" + std::to_string(M));
    CsvWriter csv(output_path(config, "table.csv"), header, stamp(options));
    for (std::size_t i = 0; i < thetas.size(); ++i) {
        csv.field(thetas[i]);
        log << "theta " << format_double(thetas[i]) << ':';
        for (double e : table.errors[i]) {
            csv.field(e);
            char buf[32];
            std::snprintf(buf, sizeof buf, " %.3e", e);
            log << buf;
        }
        csv.end_row();
        log << '\n';
    }
    return Success;
}

int cmd_kernel(const CommandOptions& options, std::ostream& log)
{
    const RunConfig config = resolve_config(options);
    const Experiment e = build_experiment(config);
    const KernelParams params = kernel_params(e);
    const int m_max = config.kernel_m_max.value_or(e.mesh.M());
    if (m_max < 0)
        throw ValidationError("kernel: kernel_m_max must be >= 0");
    const Kernel kernel = kernel_by_recurrence(params, m_max);
    if (!params.supported)
        log << "warning: sigma < 1/2, kernel is not dissipative\n";

    const std::string path = output_path(config, "kernel.csv");
    if (!options.compare) {
        write_kernel_csv(path, kernel, options);
        log << "wrote " << m_max + 1 << " kernel values\n";
        return Success;
    }

    const Kernel legendre = kernel_by_legendre(params, m_max);
    const int oracle_max = std::min(m_max, config.oracle_m_max);
    const std::vector<double> oracle = kernel_gf_oracle(params, oracle_max);

    CsvWriter csv(path, {"m", "R_m", "lg_abs_R_m", "R_m_legendre", "diff_legendre", "R_m_oracle", "diff_oracle"},
                  stamp(options));
    double max_legendre = 0.0;
    double max_legendre_rel = 0.0;
    double max_oracle = 0.0;
    for (int m = 0; m <= m_max; ++m) {
        const double r = kernel[m];
        const double dl = std::abs(r - legendre[m]);
        max_legendre = std::max(max_legendre, dl);
        max_legendre_rel = std::max(max_legendre_rel, dl / std::abs(r));
        csv.field(m).field(r).field(std::log10(std::abs(r))).field(legendre[m]).field(dl);
        if (m <= oracle_max) {
            const double d = std::abs(r - oracle[static_cast<std::size_t>(m)]);
            max_oracle = std::max(max_oracle, d);
            csv.field(oracle[static_cast<std::size_t>(m)]).field(d);
        } else {
            csv.field(std::string()).field(std::string());
        }
        csv.end_row();
    }
    log << "max |recurrence - legendre| = " << format_double(max_legendre) << '\n';
    log << "max relative |recurrence - legendre| = " << format_double(max_legendre_rel) << '\n';
    log << "max |recurrence - oracle| (m <= " << oracle_max << ") = " << format_double(max_oracle) << '\n';
    return max_legendre_rel <= 1e-12 && max_oracle <= 1e-8 ? Success : NumericalFailure;
}

int cmd_diagnose(const CommandOptions& options, std::ostream& log)
{
    const RunConfig config = resolve_config(options);
    const Experiment e = build_experiment(config);
    const KernelParams params = kernel_params(e);
    if (!params.supported)
        log << "warning: sigma < 1/2, the dissipativity checks are expected to fail\n";
    const Kernel kernel = kernel_by_recurrence(params, config.dissipativity_M);
    const DissipativityResult dis =
        certify_dissipativity(kernel, config.dissipativity_trials, config.dissipativity_M, config.seed);

    std::vector<Check> checks{
        {"dissipativity_cs", dis.worst_cs, dis.tolerance, true},
        {"dissipativity_csa", dis.worst_csa, dis.tolerance, true},
    };
    for (auto& c : energy_checks(e))
        checks.push_back(std::move(c));
    log << "dissipativity sequences: " << dis.sequences << '\n';
    return write_checks(output_path(config, "diagnostics.csv"), checks, options, log) ? Success : NumericalFailure;
}

int guarded(int (*command)(const CommandOptions&, std::ostream&), const CommandOptions& options, std::ostream& log,
            std::ostream& err)
{
    try {
        return command(options, log);
    } catch (const ValidationError& ex) {
        err << "error: " << ex.what() << '\n';
        return ValidationFailure;
    } catch (const NumericalError& ex) {
        err << "numerical failure: " << ex.what() << '\n';
        return NumericalFailure;
    } catch (const std::invalid_argument& ex) {
        err << "error: " << ex.what() << '\n';
        return ValidationFailure;
    } catch (const std::exception& ex) {
        err << "failure: " << ex.what() << '\n';
        return NumericalFailure;
    }
}

} // namespace dtbc::cli
