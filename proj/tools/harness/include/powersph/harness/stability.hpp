#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace powersph::harness {

enum class FailureKind { None, SampleNonfinite, GradientNonfinite, NormalizerNonfinite, RejectionCap };

std::string_view to_string(FailureKind kind);

struct StabilityCell {
  std::size_t d;
  double kappa;
  bool ps_stable;
  bool vmf_stable;
  FailureKind ps_failure;
  FailureKind vmf_failure;

  /// The single reported kind: the Power Spherical failure if any, else
  /// the vMF failure, else None.
  FailureKind failure_kind() const;
};

/// Per-cell seeds: derive_seed(master, {d, kappa, stream}) with stream 0 for
/// mu, 1 for the Power Spherical and 2 for the vMF draws.
enum SeedStream : std::uint64_t { kSeedMu = 0, kSeedPowerSpherical = 1, kSeedVmf = 2 };

/// Draws `samples` vectors plus d(mu^T x)/dkappa from each distribution at
/// (d, kappa) with a seeded random mu, and checks every value (and the log
/// normalizer) for finiteness. Samples are drawn one at a time so memory
/// stays O(d).
StabilityCell run_stability_cell(std::size_t d, double kappa, std::size_t samples,
                                 std::uint64_t seed);

/// All cells of d_grid x kappa_grid in row-major (d outer) order. Cells run
/// on `threads` workers (0 = hardware concurrency); results do not depend
/// on the thread count.
std::vector<StabilityCell> run_stability_sweep(const std::vector<std::size_t>& d_grid,
                                               const std::vector<double>& kappa_grid,
                                               std::size_t samples, std::uint64_t seed,
                                               std::size_t threads = 0);

}  // namespace powersph::harness
