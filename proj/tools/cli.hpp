#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dfsqec::cli {

/// Runs the dfsqec command line. `args` excludes the program name.
/// Returns the process exit code: 0 on success, 1 when `check` finds a
/// mismatch, 2 on usage or configuration errors (one-line diagnostic on `err`).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dfsqec::cli
