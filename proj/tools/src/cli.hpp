#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cfv::cli {

/// Runs one command line (without the program name). Returns the exit status:
/// 0 on success, 1 on a domain error, 2 on malformed input or usage.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cfv::cli
