#pragma once

#include <iosfwd>

namespace pullsim {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitIo = 2,
  kExitFalsified = 3,
};

/// Entry point of the `pullsim` command line tool.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pullsim
