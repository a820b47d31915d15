#ifndef MLOP_TOOLS_CLI_HPP
#define MLOP_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace mlop::cli {

enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kValidation = 2,
    kSizeGuard = 3,
    kInfeasible = 4,
};

/// Runs the command line (args excludes the program name) and returns the
/// process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mlop::cli

#endif
