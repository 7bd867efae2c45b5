#ifndef MOOREHOM_TOOLS_CLI_HPP
#define MOOREHOM_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace moore::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitError = 2;

/// Runs one command line (without the program name). Reports go to `out`,
/// structured errors to `err`. Exit code 0 iff every verification passed.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace moore::cli

#endif  // MOOREHOM_TOOLS_CLI_HPP
