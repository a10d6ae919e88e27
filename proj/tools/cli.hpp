#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace flagflow::cli {

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitParameter = 2;
inline constexpr int kExitNumerical = 3;

/// Runs the tool on `args` (program name excluded). Data goes to `out`
/// unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace flagflow::cli
