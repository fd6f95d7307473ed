#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace patlist::cli {

// Runs one command line (without the program name). Patterns and CSV go to
// `out`, reports and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace patlist::cli
