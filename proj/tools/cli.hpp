#ifndef MCRP_TOOLS_CLI_HPP
#define MCRP_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace mcrp::cli {

/// Exit codes: 0 success, 1 a threshold or verification check failed, 2 bad input.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mcrp::cli

#endif  // MCRP_TOOLS_CLI_HPP
