// The qhpair command line. Exit codes: 0 all checks pass, 2 parse error,
// 3 precondition violated, 4 computation failed, 5 a verification check
// failed.
#ifndef QHPAIR_CLI_COMMANDS_HPP
#define QHPAIR_CLI_COMMANDS_HPP

#include <ostream>
#include <string>
#include <vector>

namespace qhpair::cli {

enum ExitCode { kOk = 0, kParse = 2, kPrecondition = 3, kComputation = 4, kVerification = 5 };

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qhpair::cli

#endif  // QHPAIR_CLI_COMMANDS_HPP
