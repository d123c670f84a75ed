#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vistrack {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitNumerical = 3;

/// Runs the `vistrack` command line. `args[0]` is the program name. Results go to `out`,
/// diagnostics and usage text to `err`.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vistrack
