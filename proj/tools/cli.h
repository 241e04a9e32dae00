#ifndef TWOSERVER_TOOLS_CLI_H_
#define TWOSERVER_TOOLS_CLI_H_

#include <iosfwd>

namespace twoserver::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitVerificationFailed = 2;

// Entry point of the `twoserver` tool, with argv[0] the program name. Output
// goes to `out` unless --out names a file.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace twoserver::cli

#endif  // TWOSERVER_TOOLS_CLI_H_
