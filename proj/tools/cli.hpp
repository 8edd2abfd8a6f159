#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "graphzeta/types.hpp"

namespace gz::cli {

/// Parses "0.3+0.2i", "-i", "2", "1e-3-4e-2i". Throws ParseError.
Complex parse_complex(const std::string& text);

/// Runs one command line (without the program name). Results go to `out`
/// unless --output names a file; errors are JSON records on `out` too.
/// Exit status: 0 ok, 2 domain error, 3 budget exceeded, 1 anything else.
int run(const std::vector<std::string>& args, std::ostream& out);

}  // namespace gz::cli
