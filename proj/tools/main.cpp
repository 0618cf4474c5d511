#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv)
{
    using namespace dtbc::cli;

    CLI::App app{"Half-axis parabolic solver with discrete transparent boundary conditions"};
    app.require_subcommand(1);
    app.fallthrough();

    CommandOptions options;
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    auto* config_opt = app.add_option("--config", config_path, "run configuration (key = value)");
    auto* out_opt = app.add_option("--out", out_dir, "output directory (overrides output_dir)");
    app.add_flag("--deterministic", options.deterministic, "omit timestamps and runtimes");
    app.add_flag("--compare", options.compare, "kernel: add Legendre and oracle columns");
    auto* seed_opt = app.add_option("--seed", seed, "random seed for diagnose");

    int (*command)(const CommandOptions&, std::ostream&) = nullptr;
    app.add_subcommand("solve", "march one configuration, write solution.csv and report.csv")
        ->callback([&] { command = cmd_solve; });
    app.add_subcommand("table", "error table over theta and M, write table.csv")->callback([&] { command = cmd_table; });
    app.add_subcommand("kernel", "dump the boundary kernel, write kernel.csv")->callback([&] { command = cmd_kernel; });
    app.add_subcommand("diagnose", "dissipativity and energy checks, write diagnostics.csv")
        ->callback([&] { command = cmd_diagnose; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? Success : ValidationFailure;
    }

    if (*config_opt)
        options.config_path = config_path;
    if (*out_opt)
        options.out_dir = out_dir;
    if (*seed_opt)
        options.seed = seed;
    return guarded(command, options, std::cout, std::cerr);
}
