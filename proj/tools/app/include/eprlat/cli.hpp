#pragma once

#include <ostream>

namespace eprlat {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // I/O and anything unexpected
inline constexpr int kExitUsage = 2;    // bad arguments, config or parameter domain
inline constexpr int kExitNumerical = 3;

/// Entry point behind main(); returns the process exit code.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace eprlat
