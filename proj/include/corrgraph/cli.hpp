#pragma once

#include <iosfwd>

namespace corrgraph {

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitBadInput = 2, kExitDiverged = 3, kExitIo = 4 };

/// Entry point of the `corrgraph` tool; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace corrgraph
