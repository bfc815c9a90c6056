#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace extremal::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kGateFailed = 1;
inline constexpr int kUsage = 2;
inline constexpr int kInfeasible = 3;

/// Runs one subcommand. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace extremal::cli
