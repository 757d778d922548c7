#ifndef DBD_TOOLS_CLI_HPP
#define DBD_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace dbd::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kInvalidArguments = 2,
  kSignatureError = 3,
  kNotAdmissible = 4,
  kInvalidTemplate = 5,
};

// Runs one command; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dbd::cli

#endif  // DBD_TOOLS_CLI_HPP
