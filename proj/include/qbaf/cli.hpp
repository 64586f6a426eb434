#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qbaf {

// Runs the command-line interface on the given argument list (program name
// excluded). Framework input is read from `in` when the input path is "-";
// normal output goes to `out`, diagnostics to `err`. Returns the process exit
// code: 0 on success, 1 on usage or input errors, 2 when a solve did not
// converge.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace qbaf
