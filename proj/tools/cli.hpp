#ifndef HECE_TOOLS_CLI_HPP
#define HECE_TOOLS_CLI_HPP

#include <iosfwd>
#include <span>
#include <string>

namespace hece::cli {

/// Process exit codes.
enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kData = 2,
    kEmbedder = 3,
};

/// Runs the `hece` command line. `args` excludes the program name. Input
/// defaults to `in` and output to `out` unless -i/-o name files; failures
/// print one line to `err`.
int run(std::span<const std::string> args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace hece::cli

#endif  // HECE_TOOLS_CLI_HPP
