#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace helixlift::cli {

/// Runs one command line (without the program name). Exit codes: 0 success,
/// 1 invalid input, 2 degenerate geometry, 3 verify-paper invariant failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace helixlift::cli
