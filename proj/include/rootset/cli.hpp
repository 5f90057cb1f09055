#ifndef ROOTSET_CLI_HPP
#define ROOTSET_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace rootset::cli {

enum ExitStatus : int {
  kSuccess = 0,
  kInternalError = 1,
  kInvalidArguments = 2,
  kResourceCapRefused = 3,
  kCertifiedFailure = 4,
};

/// Runs one subcommand. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rootset::cli

#endif  // ROOTSET_CLI_HPP
