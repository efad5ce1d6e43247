#pragma once

#include <iostream>

namespace subgc {

/// Runs the subgc command line. Returns the process exit code:
/// 0 success, 2 user/config error, 1 internal error.
int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout,
            std::ostream& err = std::cerr);

}  // namespace subgc
