#pragma once

#include <iosfwd>
#include <vector>
#include <string>

namespace crackctl {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitData = 3,
  kExitIo = 4,
  kExitInvariant = 5,
};

// Entry point shared by the executable and the tests. Diagnostics go to
// `err` as a single line; reports and the echoed config go to `out`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace crackctl
