#include "powersph/harness/grid.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>

namespace powersph::harness {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(std::string_view spec, std::string_view why) {
  throw UsageError("bad grid '" + std::string(spec) + "': " + std::string(why));
}

long parse_int(std::string_view s, std::string_view spec) {
  s = trim(s);
  long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    fail(spec, "expected an integer, got '" + std::string(s) + "'");
  }
  return v;
}

// "lo..hi" or a single integer.
std::pair<long, long> parse_range(std::string_view s, std::string_view spec) {
  const auto dots = s.find("..");
  if (dots == std::string_view::npos) {
    const long v = parse_int(s, spec);
    return {v, v};
  }
  const long lo = parse_int(s.substr(0, dots), spec);
  const long hi = parse_int(s.substr(dots + 2), spec);
  if (lo > hi) fail(spec, "empty range");
  return {lo, hi};
}

double parse_real(std::string_view s, std::string_view spec) {
  s = trim(s);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    fail(spec, "expected a number, got '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

std::vector<double> parse_grid(std::string_view spec) {
  const std::string_view body = trim(spec);
  if (body.empty()) fail(spec, "empty");
  std::vector<double> out;

  const auto x = body.find('x');
  if (x != std::string_view::npos) {
    const auto [a_lo, a_hi] = parse_range(body.substr(0, x), spec);
    std::string_view exp = trim(body.substr(x + 1));
    if (exp.substr(0, 3) != "10^") fail(spec, "expected '10^' after 'x'");
    exp = trim(exp.substr(3));
    if (!exp.empty() && exp.front() == '{') {
      if (exp.back() != '}') fail(spec, "unbalanced braces");
      exp = exp.substr(1, exp.size() - 2);
    }
    const auto [b_lo, b_hi] = parse_range(exp, spec);
    if (a_lo < 0) fail(spec, "mantissa must be non-negative");
    if (b_lo < -300 || b_hi > 300) fail(spec, "exponent out of range");
    for (long a = a_lo; a <= a_hi; ++a) {
      for (long b = b_lo; b <= b_hi; ++b) {
        // Decimal parse gives the correctly rounded value of a * 10^b.
        out.push_back(std::stod(std::to_string(a) + "e" + std::to_string(b)));
      }
    }
  } else {
    std::size_t start = 0;
    while (start <= body.size()) {
      const auto comma = body.find(',', start);
      const auto item = body.substr(start, comma == std::string_view::npos ? body.size() - start
                                                                            : comma - start);
      const double v = parse_real(item, spec);
      if (!std::isfinite(v) || v < 0.0) fail(spec, "values must be finite and >= 0");
      out.push_back(v);
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace powersph::harness
