#pragma once

#include <string>
#include <vector>

namespace wstruct {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitViolation = 1, kExitInputError = 2 };

struct CliResult {
  int exit_code = kExitOk;
  std::string out;  ///< JSON report, or the table under --pretty
  std::string err;  ///< diagnostics
};

/// Runs one command; `args` excludes the program name. Never throws.
CliResult run_cli(const std::vector<std::string>& args);

}  // namespace wstruct
