#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qsf::cli {

enum ExitCode : int { ok = 0, internal = 1, usage = 2, tolerance = 3 };

/// Runs one command.  `args` excludes the program name.  Reports go to
/// `out`, diagnostics to `err` as "error: <kind>: <message>".
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qsf::cli
