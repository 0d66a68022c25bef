#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ekv::cli {

enum Exit : int { kPass = 0, kConditionFailure = 1, kUsage = 2 };

/// Runs the `ekv` command line. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ekv::cli
