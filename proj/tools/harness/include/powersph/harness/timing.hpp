#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace powersph::harness {

struct TimingConfig {
  std::size_t d = 64;
  std::size_t batch = 100;
  std::size_t trials = 7;
  std::size_t reps = 100;
  std::uint64_t seed = 0;
};

struct TimingRow {
  std::string dist;  // "power_spherical" or "vmf"
  double kappa;
  double mean_ms;  // mean over trials of the per-rep batch time
  double std_ms;   // sample standard deviation over trials
  std::size_t trials;
  std::size_t reps;
  double mean_rejections;  // per sample; zero by construction for power_spherical
};

/// Wall-clock batch sampling time (no gradients) per kappa and
/// distribution. Each trial runs one untimed warm-up batch, then `reps`
/// timed batches. Throws UsageError for zero batch, trials, reps or d < 2.
std::vector<TimingRow> run_timing(const TimingConfig& config, const std::vector<double>& kappa_grid);

}  // namespace powersph::harness
