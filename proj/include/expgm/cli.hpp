#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace expgm {

/// Runs one subcommand; `args` excludes the program name. Returns the process
/// exit code (0 ok, 1 parse error, 2 precondition, 3 check failed, 4 numerical
/// budget exhausted).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace expgm
