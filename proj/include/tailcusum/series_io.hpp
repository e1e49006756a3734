#pragma once

#include <istream>
#include <string>

#include "tailcusum/variates.hpp"

namespace tailcusum {

/// One decimal real per line. Blank lines and lines starting with '#'
/// (after leading whitespace) are skipped. Throws ParameterError naming the
/// source and 1-based line number of the first unparseable line.
Series read_series(std::istream& in, const std::string& source = "<input>");

/// Reads from `path`, or from `stdin_stream` when path is "-".
Series read_series_file(const std::string& path, std::istream& stdin_stream);

/// Parses a law such as "t:3", "pareto:2" or "burr:1,1,-2" (lambda,beta,gamma).
Innovation parse_law(const std::string& text);

} // namespace tailcusum
