#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kinwave::cli {

/// Command-line driver behind the `kinwave` tool.  Subcommands: theta, flux,
/// riemann, simulate, validate.  Returns 0 on success, 1 on validation
/// errors, 2 when an internal invariant fails (nothing is emitted in that
/// case).  Factored out of main() so tests can drive it directly.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kinwave::cli
