#pragma once

#include <iosfwd>

namespace nhur::cli {

// Exit codes.
inline constexpr int kAllHold = 0;
inline constexpr int kViolation = 1;
inline constexpr int kUsageError = 2;

// Entry point shared by the `nhur` executable and the tests. Subcommands:
// example1, example2, check, metric. NHUR_TOLERANCE_UR overrides the
// violation threshold (default 1e-9).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace nhur::cli
