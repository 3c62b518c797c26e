#pragma once

#include <string>
#include <vector>

namespace erdim::cli {

// Dispatches one subcommand invocation. Returns the process exit code:
// 0 on success, 2 on invalid configuration, 3 on numerical failure.
int run(const std::vector<std::string>& args);

}  // namespace erdim::cli
