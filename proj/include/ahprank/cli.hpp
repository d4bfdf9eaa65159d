#pragma once

#include <ostream>

namespace ahprank {

/// Exit codes: 0 success, 1 domain error, 2 usage error. Nothing is written
/// to `out` unless the command succeeds.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ahprank
