#pragma once

#include <string>
#include <vector>

namespace omt::cli {

enum ExitCode : int {
  kOk = 0,
  kNotConverged = 1,
  kInputError = 2,
  kNumericalError = 3,
};

/// Entry point of the `omt` tool. Never throws; errors are printed on stderr
/// and mapped to the exit codes above.
int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args);

}  // namespace omt::cli
