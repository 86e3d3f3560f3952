#pragma once

#include <stdexcept>
#include <string_view>
#include <vector>

namespace powersph::harness {

/// Bad command-line input; the CLI maps it to exit code 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parses a value grid, either "a_min..a_max x 10^{b_min..b_max}" (integer
/// mantissas and exponents, braces optional, single values allowed on
/// either side) or a comma-separated list of non-negative reals. Returns
/// sorted, de-duplicated values. Throws UsageError on malformed input.
std::vector<double> parse_grid(std::string_view spec);

inline constexpr std::string_view kStabilityGrid = "1..9 x 10^{0..5}";
inline constexpr std::string_view kTimingKappaGrid = "1..5 x 10^{0..4}";

}  // namespace powersph::harness
