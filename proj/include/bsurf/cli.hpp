// Command-line front end: argument parsing, dispatch and report rendering.
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bsurf {

/// Exit codes: 0 success or certificate, 1 violation found, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// BSURF_DEPTH_DEFAULT when set to a positive integer, else `fallback`.
long default_depth(long fallback = 6);

}  // namespace bsurf
