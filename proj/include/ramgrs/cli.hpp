#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ramgrs {

/// Entry point behind the binary: args excludes the program name. Reports go
/// to `out`, diagnostics to `err`. Returns the process exit code:
///   0 ok, 1 input error, 2 solver failure, 3 theorem violation.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ramgrs
