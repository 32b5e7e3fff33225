#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace prodnorm::cli {

/// Exit codes: 0 success, 1 module or I/O failure (JSON error object on
/// `err`), 2 command-line parse failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command. args excludes the program name. Results go to `out`
/// unless --out names a file, which is then written atomically.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Worker count: hardware concurrency, capped by PRODNORM_THREADS when set.
unsigned worker_threads();

}  // namespace prodnorm::cli
