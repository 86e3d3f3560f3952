#include "powersph/harness/stability.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "powersph/errors.hpp"
#include "powersph/power_spherical.hpp"
#include "powersph/vmf.hpp"

namespace powersph::harness {
namespace {

bool all_finite(const std::vector<double>& v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

FailureKind from_numeric(const NumericError& e) {
  return e.kind() == NumericError::Kind::RejectionCap ? FailureKind::RejectionCap
                                                      : FailureKind::SampleNonfinite;
}

FailureKind check_power_spherical(const PowerSphericalParams& p, std::size_t samples,
                                  RandomStream& rng) {
  try {
    for (std::size_t i = 0; i < samples; ++i) {
      const auto s = sample(p, 1, rng, true).front();
      if (!std::isfinite(s.t) || !all_finite(s.x)) return FailureKind::SampleNonfinite;
      if (!std::isfinite(*s.dot_grad_kappa)) return FailureKind::GradientNonfinite;
    }
    if (!std::isfinite(log_normalizer(p))) return FailureKind::NormalizerNonfinite;
  } catch (const NumericError& e) {
    return from_numeric(e);
  }
  return FailureKind::None;
}

FailureKind check_vmf(const VonMisesFisherParams& q, std::size_t samples, RandomStream& rng) {
  try {
    for (std::size_t i = 0; i < samples; ++i) {
      const auto s = sample_vmf(q, rng, true);
      if (!std::isfinite(s.t) || !all_finite(s.x)) return FailureKind::SampleNonfinite;
      if (!std::isfinite(*s.dot_grad_kappa)) return FailureKind::GradientNonfinite;
    }
    if (!std::isfinite(log_normalizer_vmf(q))) return FailureKind::NormalizerNonfinite;
  } catch (const NumericError& e) {
    return from_numeric(e);
  }
  return FailureKind::None;
}

}  // namespace

std::string_view to_string(FailureKind kind) {
  switch (kind) {
    case FailureKind::None: return "none";
    case FailureKind::SampleNonfinite: return "sample_nonfinite";
    case FailureKind::GradientNonfinite: return "gradient_nonfinite";
    case FailureKind::NormalizerNonfinite: return "normalizer_nonfinite";
    case FailureKind::RejectionCap: return "rejection_cap";
  }
  return "none";
}

FailureKind StabilityCell::failure_kind() const {
  return ps_failure != FailureKind::None ? ps_failure : vmf_failure;
}

StabilityCell run_stability_cell(std::size_t d, double kappa, std::size_t samples,
                                 std::uint64_t seed) {
  const auto cell_seed = [&](std::uint64_t stream) {
    return derive_seed(seed, {static_cast<std::uint64_t>(d), seed_id(kappa), stream});
  };
  RandomStream mu_rng(cell_seed(kSeedMu));
  const Direction mu = Direction::random(d, mu_rng);

  RandomStream ps_rng(cell_seed(kSeedPowerSpherical));
  const FailureKind ps = check_power_spherical(PowerSphericalParams(mu, kappa), samples, ps_rng);

  RandomStream vmf_rng(cell_seed(kSeedVmf));
  const FailureKind vmf = check_vmf(VonMisesFisherParams(mu, kappa), samples, vmf_rng);

  return {d, kappa, ps == FailureKind::None, vmf == FailureKind::None, ps, vmf};
}

std::vector<StabilityCell> run_stability_sweep(const std::vector<std::size_t>& d_grid,
                                               const std::vector<double>& kappa_grid,
                                               std::size_t samples, std::uint64_t seed,
                                               std::size_t threads) {
  const std::size_t n = d_grid.size() * kappa_grid.size();
  std::vector<StabilityCell> cells(n);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(n, 1));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      cells[i] = run_stability_cell(d_grid[i / kappa_grid.size()], kappa_grid[i % kappa_grid.size()],
                                    samples, seed);
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return cells;
}

}  // namespace powersph::harness
