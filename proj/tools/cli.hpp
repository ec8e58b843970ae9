// hanner-lab command-line front end.

#pragma once

#include <iosfwd>

namespace hanner::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitViolation = 2;

/// Runs one command. Reports go to --out when given and to `out` otherwise;
/// diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hanner::cli
