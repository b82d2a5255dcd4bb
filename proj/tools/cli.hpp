#pragma once

#include <string>
#include <vector>

namespace sealcheck::cli {

enum ExitCode : int {
  kOk = 0,
  kNegative = 1,  // the analysis answered "no"
  kInputError = 2,
  kBudgetOrInternal = 3,
};

struct CliResult {
  int exit_code = kOk;
  std::string out;
  std::string err;
};

// Runs one command. `args` excludes the program name.
CliResult run(const std::vector<std::string>& args);

}  // namespace sealcheck::cli
