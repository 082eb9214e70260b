#pragma once

#include <iosfwd>

namespace sirank {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitData = 2,
    kExitInternal = 3,
};

/// Entry point of the `sirank` tool: subcommands rank, sir, eval, pipeline.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace sirank
