#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace branescope::cli {

// Parses argv-style arguments (program name excluded), runs the matched
// subcommand, and writes the report to out and diagnostics to err.
//
// Exit codes: 0 success; 1 usage error or malformed input; 2 domain error
// (non-reflexive polytope, non-simplicial fan, non-Cartier divisor, ...);
// 3 compute error (genericity failure, numerical instability, exhausted
// scan).  Output is byte-identical for identical (input, seed, flags).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace branescope::cli
