#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hpc::cli {

// Exit codes of the front-end.
inline constexpr int kOk = 0;
inline constexpr int kViolation = 1;
inline constexpr int kInputError = 2;

// Runs one command line (args[0] is the program name). Reports go to out,
// diagnostics to err. Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hpc::cli
