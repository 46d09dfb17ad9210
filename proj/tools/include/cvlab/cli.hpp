#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cvlab::cli {

enum ExitCode : int { kSuccess = 0, kVerificationFailure = 1, kInvalidInput = 2 };

/// Entry point behind the `cvlab` binary. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cvlab::cli
