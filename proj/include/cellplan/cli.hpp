#ifndef CELLPLAN_CLI_HPP
#define CELLPLAN_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace cellplan::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_error = 1;
inline constexpr int exit_invalid_input = 2;
inline constexpr int exit_infeasible = 3;

/// Entry point of the `cellplan` tool. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace cellplan::cli

#endif
