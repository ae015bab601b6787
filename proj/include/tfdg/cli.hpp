#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tfdg {

/// Runs one CLI request (arguments without the program name) against the
/// given streams and returns the process exit code: 0 on success, 1 on a
/// domain failure (unreadable input, parse or validation error, failed
/// check), 2 on a usage error (unknown flags or subcommands).
///
/// Subcommands: validate, build, query, enumerate, export, check.  Every one
/// takes a spec file path; see the README or `--help` for the flags.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace tfdg
