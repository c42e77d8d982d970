#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace regpat {

enum ExitCode : int { kExitOk = 0, kExitViolation = 1, kExitMalformed = 2 };

/// Runs one command line (without the program name). Commands: match, enum,
/// simulate, reduce, verify. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace regpat
