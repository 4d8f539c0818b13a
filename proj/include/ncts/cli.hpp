#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ncts {

enum ExitCode : int {
    kExitSuccess = 0,
    kExitValidation = 1,
    kExitIo = 2,
};

// Runs the command line `args` (args[0] is the program name) and returns the
// process exit code. Reports go to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace ncts
