#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace telegraph {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntimeError = 1;
inline constexpr int kExitUsageError = 2;

/// Entry point of the `telegraph` tool. `args` excludes the program name.
/// Subcommands: simulate, bound, experiment, mgf-check, thresholds.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "start:step:stop" (inclusive) or a comma-separated list.
std::vector<double> parse_lambda_grid(const std::string& text);

}  // namespace telegraph
