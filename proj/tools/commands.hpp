#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace logdet::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_parse = 1,         ///< bad command line or unreadable/malformed input file
    exit_precondition = 2,  ///< input violates a documented precondition
    exit_numerical = 3,     ///< the computation failed
};

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace logdet::cli
