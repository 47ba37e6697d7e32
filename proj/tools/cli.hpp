#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace syt::cli {

enum ExitCode : int {
  ok = 0,
  verify_failed = 1,
  domain_error = 2,
  no_such_branch = 3,
};

/// Runs the command line `args` (without the program name). Data goes to
/// `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace syt::cli
