#ifndef LIESPEC_CLI_HPP
#define LIESPEC_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace liespec {

/// Runs one CLI invocation. Exit codes: 0 success, 1 domain errors
/// (reported, not crashed), 2 input errors (bad files, parse failures,
/// bad arguments).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace liespec

#endif
