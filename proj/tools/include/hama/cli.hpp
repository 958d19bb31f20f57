#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hama::cli {

enum ExitCode : int { ok = 0, usage_error = 1, correctness_failure = 2 };

/// Runs the `hama` command line. `args` excludes the program name. Reports and
/// help go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses a grid argument: a comma list ("0.1,0.5,0.9") or an inclusive
/// linear range "lo:hi:count". Throws InvalidRequest.
std::vector<double> parse_grid(const std::string& text);

}  // namespace hama::cli
