#ifndef LWP_TOOLS_CLI_HPP
#define LWP_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "lwp/verify.hpp"

namespace lwp::cli {

/// Default seed used by every randomized subcommand when --seed is not
/// given.  Documented so runs are reproducible out of the box.
inline constexpr std::uint64_t kDefaultSeed = 1729;

/// Parse the `v@m,v@m,...` cell grammar into a simple function.
SimpleFunction parse_cells(const std::string& spec);

/// Run the CLI.  Returns the process exit code: 0 when every check in
/// the produced report passed, 1 when a check failed, 2 on usage or
/// parse errors (reported to `err`).
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace lwp::cli

#endif  // LWP_TOOLS_CLI_HPP
