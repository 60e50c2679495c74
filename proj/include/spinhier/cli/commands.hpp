#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spinhier::cli {

enum class ExitStatus : int {
  kOk = 0,                  // success / verified
  kVerificationFailed = 1,  // e.g. spectra differ
  kUsage = 2,               // bad flags or input
  kNumerical = 3,           // convergence or hermiticity failure
};

enum class OutputFormat { kPlain, kJson, kCsv };

// Entry point behind the spin_tool binary. `args` excludes the program
// name. Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace spinhier::cli
