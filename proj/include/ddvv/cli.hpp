#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ddvv {

/// Runs one `ddvvlab` invocation (args exclude the program name).
/// Exit codes: 0 success, 1 validation error, 2 numerical failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ddvv
