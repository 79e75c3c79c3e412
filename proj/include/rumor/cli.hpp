#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rumor::cli {

/// Runs the `rumormatch` command line. `args` excludes the program name.
/// Diagnostics and progress go to `err`; the return value is the process
/// exit code (0 ok, 2 input error, 3 empty corpus, 4 evaluation degeneracy,
/// 1 internal). Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rumor::cli
