#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace deadend::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInvariant = 2;

/// Runs one command line (args excludes the program name) and returns the
/// process exit status. All output goes to `out` / `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace deadend::cli
