#pragma once

#include <iosfwd>

namespace solvlie {

/// Exit codes: 0 ok, 1 usage or parse error, 2 negative verdict, 3 internal trap.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace solvlie
