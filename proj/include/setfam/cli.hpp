#pragma once

#include <iosfwd>

namespace setfam {

// Exit codes are a stable scripting contract.
enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitUsage = 2,
  kExitCapacity = 3,
  kExitBudget = 4,
};

inline constexpr const char* kToolVersion = "0.1.0";

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace setfam
