#ifndef ORUGA_CLI_HPP
#define ORUGA_CLI_HPP

#include <ostream>

namespace oruga::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1; // invalid input, no match, no result
inline constexpr int kExitUsage = 2;  // bad arguments, unreadable files, unknown names

/// Runs the `oruga` command line. Results go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace oruga::cli

#endif
