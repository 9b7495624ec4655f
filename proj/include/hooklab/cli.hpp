#ifndef HOOKLAB_CLI_HPP_
#define HOOKLAB_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace hooklab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the `hooklab` tool. args excludes the program name.
/// Returns 0 when every check passes, 1 when a mathematical check fails and 2
/// for usage or configuration errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hooklab

#endif  // HOOKLAB_CLI_HPP_
