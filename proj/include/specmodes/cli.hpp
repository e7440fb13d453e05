#pragma once

#include <ostream>

#include "specmodes/error.hpp"

namespace specmodes::cli {

/// Process exit codes.
enum ExitCode : int {
  kSuccess = 0,
  kMismatch = 1,    // compare: tolerance exceeded
  kInputError = 2,  // bad input, schema or arguments
  kModelError = 3,
  kDegenerate = 4,
  kIoError = 5,
};

int exit_code_for(ErrorCode code);

/// Entry point for the `specmodes` tool; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace specmodes::cli
