#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fairkit::cli {

/// Runs the command line `args` (args[0] is the program name). Returns the
/// process exit code: 0 success, 2 config error, 3 data error, 4 numeric
/// failure. Errors are written to `err` as a one-line JSON object.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fairkit::cli
