#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace caustics {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kExitVerified = 0,
  kExitNegative = 1,
  kExitUsage = 2,
};

/// Runs the command line `args` (without the program name), writing results
/// to `out` and diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

/// Parses an angle: a decimal number, "pi", "pi/q", "p*pi/q", "B:n:k" (the
/// k-th root of B_n) or "A:n:i" (the i-th member of A_n, 1-based).
double parse_angle(const std::string& text);

}  // namespace caustics
