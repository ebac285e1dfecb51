#pragma once

#include <ostream>

namespace ordlab {

// Exit statuses of run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

// Parses argv (argv[0] is the program name) and executes one subcommand.
// Reports go to `out` unless --output names a file; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ordlab
