#pragma once

#include <ostream>
#include <span>
#include <string>

namespace secantflow::cli {

enum ExitCode : int { Ok = 0, PropertyFailure = 1, InputError = 2 };

/// Runs one subcommand. `args` excludes the program name. Reports go to `out`,
/// diagnostics (as JSON) to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace secantflow::cli
