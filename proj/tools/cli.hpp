#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ptts/oracle.hpp"

namespace ptts::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2 };

// Entry point behind the `ptts` binary. `args` excludes the program name.
// The hooks let tests swap in a faulty solver for oracle-check.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const SolverHooks& hooks = {});

}  // namespace ptts::cli
