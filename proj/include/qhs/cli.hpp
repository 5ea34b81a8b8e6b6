#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qhs {

// Dispatches one CLI invocation (argv without the program name) and returns
// the process exit code. All output goes through the supplied streams so
// tests can run commands in-process.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace qhs
