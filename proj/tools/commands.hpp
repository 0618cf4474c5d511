#ifndef DTBC_TOOLS_COMMANDS_HPP
#define DTBC_TOOLS_COMMANDS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "dtbc/config.hpp"

namespace dtbc::cli {

enum ExitCode : int { Success = 0, ValidationFailure = 1, NumericalFailure = 2 };

struct CommandOptions {
    std::optional<std::string> config_path;
    std::optional<std::string> out_dir;
    bool deterministic = false;
    bool compare = false;
    std::optional<std::uint64_t> seed;
};

// Config file contents (or preset defaults) with command-line overrides applied.
RunConfig resolve_config(const CommandOptions& options);

int cmd_solve(const CommandOptions& options, std::ostream& log);
int cmd_table(const CommandOptions& options, std::ostream& log);
int cmd_kernel(const CommandOptions& options, std::ostream& log);
int cmd_diagnose(const CommandOptions& options, std::ostream& log);

// Runs `command`, mapping library exceptions to exit codes and messages on `err`.
int guarded(int (*command)(const CommandOptions&, std::ostream&), const CommandOptions& options, std::ostream& log,
            std::ostream& err);

} // namespace dtbc::cli

#endif // DTBC_TOOLS_COMMANDS_HPP
