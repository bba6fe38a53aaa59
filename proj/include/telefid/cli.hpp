#pragma once

#include <iosfwd>

namespace telefid {

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitUsage = 2, kExitIo = 3, kExitNumerical = 4 };

/// Runs the telefid command line: fidelity, optimize, sweep and figure subcommands.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace telefid
