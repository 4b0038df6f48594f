#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lhchi::cli {

/// Runs one command line, program name excluded. Returns 0 on success, 1 on
/// invalid input and 2 when an internal consistency check fails.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace lhchi::cli
