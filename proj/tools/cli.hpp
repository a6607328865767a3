#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace prtbp::cli {

enum ExitCode : int {
    kOk = 0,
    kInvalidParams = 1,
    kNoConvergence = 2,
    kUndefined = 3,
};

/// Parses args (without the program name), runs the command and writes the
/// result to `out` (or the --out file). Diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace prtbp::cli
