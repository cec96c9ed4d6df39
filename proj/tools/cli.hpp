#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ahpfse::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kValidation = 2;
inline constexpr int kAssertion = 3;

/// Runs one invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Whether styled output is enabled (stdout is a terminal and NO_COLOR is unset).
bool color_enabled();

}  // namespace ahpfse::cli
