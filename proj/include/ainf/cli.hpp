#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ainf {

/// Exit codes of the command-line front end.
enum ExitCode : int { kPass = 0, kCheckFailed = 1, kUsageError = 2 };

/// Runs one `ainfbench` invocation; `args` excludes the program name.
/// Reports go to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ainf
