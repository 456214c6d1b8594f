#pragma once

#include <ostream>

namespace cesaro {

/// Command-line entry point. Returns 0 pass, 1 assertion failure, 2 configuration error,
/// 3 numerical non-convergence.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace cesaro
