#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace idem::cli {

enum ExitCode : int { Ok = 0, DomainFailure = 1, UsageFailure = 2 };

/// Environment variable holding the default worker count for enumerate/hasse.
inline constexpr const char* kThreadsEnv = "IDEM_THREADS";

/// Runs one command line (without the program name). Results go to `out`,
/// one-line diagnostics to `err`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

} // namespace idem::cli
