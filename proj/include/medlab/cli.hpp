#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace medlab {

/// Runs one command line (without the program name). The report goes to
/// `out`; diagnostics, usage text and --pretty tables go to `err`.
/// Returns 0 on success, 1 on a domain error, 2 on malformed input or usage.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace medlab
