#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ringside::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidConfig = 2;
inline constexpr int kExitNumericFailure = 3;

/// Runs the command line (arguments exclude the program name). Tabular output
/// goes to `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Worker threads for simulations: RINGSIDE_THREADS if set, otherwise the
/// hardware concurrency.
unsigned worker_count();

}  // namespace ringside::cli
