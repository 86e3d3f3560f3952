#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace powersph::harness {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command line `args` (without the program name). Results go to
/// `out` unless --out names a file; diagnostics and run metadata go to
/// `err`. `in` feeds logprob when no --input file is given.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace powersph::harness
