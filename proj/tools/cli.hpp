#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mfspec::cli {

/// Runs one invocation. args[0] is the program name. Exit codes: 0 success
/// (including a rejected null), 1 data error, 2 argument error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mfspec::cli
