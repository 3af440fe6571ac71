#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace coxglue {

// Runs one workbench command.  args is argv without the program name.
// Returns 0 when every check the command ran passed, 1 when a mathematical
// check failed, and 2 on unusable input (bad flags, malformed files,
// out-of-range parameters).  All output goes to out.
int run_cli(const std::vector<std::string>& args, std::ostream& out);

}  // namespace coxglue
