#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nsdp::cli {

enum ExitCode : int {
  kOk = 0,
  kInvalid = 1,  ///< verify-td found violations
  kInfeasible = 2,
  kInputError = 3,
  kCapExceeded = 4,
};

/// Runs one command line (without the program name). Reports go to `out`
/// unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nsdp::cli
