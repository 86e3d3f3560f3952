#include "powersph/harness/timing.hpp"

#include <chrono>
#include <cmath>

#include "powersph/harness/grid.hpp"
#include "powersph/power_spherical.hpp"
#include "powersph/vmf.hpp"

namespace powersph::harness {
namespace {

using Clock = std::chrono::steady_clock;

struct Summary {
  double mean;
  double std;
};

Summary summarize(const std::vector<double>& v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  const double var = v.size() > 1 ? ss / static_cast<double>(v.size() - 1) : 0.0;
  return {mean, std::sqrt(var)};
}

// Runs `batch_fn` once untimed, then `reps` times; returns the mean ms per rep.
template <class F>
double time_trial(std::size_t reps, F&& batch_fn) {
  batch_fn();
  const auto start = Clock::now();
  for (std::size_t r = 0; r < reps; ++r) batch_fn();
  const std::chrono::duration<double, std::milli> elapsed = Clock::now() - start;
  return elapsed.count() / static_cast<double>(reps);
}

}  // namespace

std::vector<TimingRow> run_timing(const TimingConfig& config, const std::vector<double>& kappa_grid) {
  if (config.batch == 0) throw UsageError("batch must be >= 1");
  if (config.trials == 0 || config.reps == 0) throw UsageError("trials and reps must be >= 1");
  if (config.d < 2) throw UsageError("d must be >= 2");

  RandomStream mu_rng(derive_seed(config.seed, {config.d}));
  const Direction mu = Direction::random(config.d, mu_rng);
  std::vector<TimingRow> rows;

  for (double kappa : kappa_grid) {
    const PowerSphericalParams p(mu, kappa);
    RandomStream rng(derive_seed(config.seed, {config.d, seed_id(kappa), 1}));
    std::vector<double> trial_ms;
    for (std::size_t t = 0; t < config.trials; ++t) {
      trial_ms.push_back(time_trial(config.reps, [&] { return sample(p, config.batch, rng); }));
    }
    const auto s = summarize(trial_ms);
    rows.push_back({"power_spherical", kappa, s.mean, s.std, config.trials, config.reps, 0.0});
  }

  for (double kappa : kappa_grid) {
    const VonMisesFisherParams q(mu, kappa);
    RandomStream rng(derive_seed(config.seed, {config.d, seed_id(kappa), 2}));
    std::vector<double> trial_ms;
    double rejections = 0.0;
    double draws = 0.0;
    for (std::size_t t = 0; t < config.trials; ++t) {
      trial_ms.push_back(time_trial(config.reps, [&] {
        for (const auto& s : sample_vmf(q, config.batch, rng)) {
          rejections += static_cast<double>(s.rejections);
          draws += 1.0;
        }
      }));
    }
    const auto s = summarize(trial_ms);
    rows.push_back({"vmf", kappa, s.mean, s.std, config.trials, config.reps, rejections / draws});
  }
  return rows;
}

}  // namespace powersph::harness
