#pragma once

#include <iosfwd>

namespace polymorse {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitInvalid = 2,
    kExitNonGeneric = 3,
    kExitInternal = 4,
};

/// Entry point of the `polymorse` tool. Reads meshes named `-` from stdin.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace polymorse
