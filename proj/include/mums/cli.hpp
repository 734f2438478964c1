#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mums::cli {

inline constexpr const char* kVersion = "1.0.0";

enum ExitCode : int { ok = 0, solver_failure = 1, input_error = 2 };

// Runs one invocation. args excludes the program name.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mums::cli
