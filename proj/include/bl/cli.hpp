#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bl {

/// Runs the command-line front end. `args` excludes the program name.
/// Data goes to `out` (or the --output file), diagnostics to `err`.
/// Exit codes: 0 success, 1 domain or verification failure, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bl
