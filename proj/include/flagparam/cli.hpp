#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "flagparam/errors.hpp"

namespace flagparam::cli {

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailed = 1,
  kValidation = 2,
  kNumeric = 3,
  kAmbiguity = 4,
};

struct ErrorClass {
  std::string code;  // e.g. "NOT_UNITARY"
  int exit_code;
};

ErrorClass classify(ErrorCode code);

// Runs one command. `args` excludes the program name. `tol_spec` is the
// value of FLAGPARAM_TOL, if set.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err, const std::optional<std::string>& tol_spec = std::nullopt);

}  // namespace flagparam::cli
