#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wordlab::cli {

/// Exit statuses of the command-line front end.
enum ExitCode : int {
  kPass = 0,
  kCheckFailed = 1,
  kUsageError = 2,
  kBudgetExceeded = 3,
};

/// Runs one subcommand. The report goes to `out` (or --out), diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wordlab::cli
