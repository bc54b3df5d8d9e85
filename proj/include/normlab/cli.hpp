#pragma once

#include <string>
#include <vector>

namespace normlab {

/// Parses argv and runs one subcommand. Exit codes: 0 success, 2 for any
/// configuration/precondition problem (including parse errors), 1 when a
/// structural invariant fails mid-computation — the signal that a checked
/// mathematical fact did not hold on this input.
int run_cli(const std::vector<std::string>& args);

}  // namespace normlab
