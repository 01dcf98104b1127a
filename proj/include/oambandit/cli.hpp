#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace oambandit {

/// Process exit codes.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 2,
    kExitRuntime = 3,
};

/// Entry point of the oam_bandit tool. `args` excludes the program name.
/// Subcommands: hom-table, simulate, sweep.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace oambandit
