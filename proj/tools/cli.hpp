#ifndef QCHECK_TOOLS_CLI_HPP
#define QCHECK_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace qcheck::cli {

enum ExitStatus { exit_pass = 0, exit_fail = 1, exit_input = 2, exit_resource = 3 };

/// Runs one command; `args` excludes the program name. Reports go to `out`,
/// diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qcheck::cli

#endif  // QCHECK_TOOLS_CLI_HPP
