#pragma once

#include <iosfwd>

namespace geoprox {

// Entry point of the geoprox command line. Exit codes: 0 success, 1 check
// failure, 2 usage or I/O error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace geoprox
