#include "powersph/harness/verify.hpp"

#include <algorithm>
#include <cmath>

#include "powersph/harness/grid.hpp"
#include "powersph/marginal_t.hpp"
#include "powersph/power_spherical.hpp"
#include "powersph/vmf.hpp"

namespace powersph::harness {
namespace {

constexpr double kSeFloor = 1e-9;
constexpr std::size_t kMaxEntrywiseDim = 5;
constexpr std::size_t kChunk = 10'000;

class Welford {
 public:
  void add(double x) {
    ++n_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (x - mean_);
  }
  double mean() const { return mean_; }
  double se() const {
    return n_ > 1 ? std::sqrt(m2_ / static_cast<double>(n_ - 1) / static_cast<double>(n_)) : 0.0;
  }

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

VerificationRow mc_row(std::string quantity, const VerifyCell& c, double closed, const Welford& w,
                       double kappa_q = std::numeric_limits<double>::quiet_NaN()) {
  const bool pass = std::fabs(closed - w.mean()) <= 3.0 * w.se() + kSeFloor;
  return {std::move(quantity), c.d, c.kappa, kappa_q, closed, w.mean(), w.se(), pass};
}

void verify_cell(const VerifyCell& c, const VerifyConfig& cfg, std::vector<VerificationRow>& rows) {
  if (c.d < 2) throw UsageError("verification cell needs d >= 2");
  if (!(c.kappa >= 0.0) || !std::isfinite(c.kappa)) throw UsageError("kappa must be finite and >= 0");
  const auto cell_seed = [&](std::uint64_t stream) {
    return derive_seed(cfg.seed, {static_cast<std::uint64_t>(c.d), seed_id(c.kappa), stream});
  };
  RandomStream mu_rng(cell_seed(0));
  const Direction mu = Direction::random(c.d, mu_rng);
  const PowerSphericalParams p(mu, c.kappa);
  const std::size_t d = c.d;
  const bool entrywise = d <= kMaxEntrywiseDim;

  const auto m = mean(p);
  const auto cs = covariance(p);
  const double log_area = log_sphere_area(d);

  std::vector<VonMisesFisherParams> vmfs;
  std::vector<double> vmf_kappas;
  if (d == 3) {
    std::vector<double> anti(mu.vector());
    for (double& v : anti) v = -v;
    for (double kq : cfg.kappa_q) {
      vmfs.emplace_back(mu, kq);
      vmfs.emplace_back(Direction::from_unit(anti), kq);
      vmf_kappas.push_back(kq);
      vmf_kappas.push_back(kq);
    }
  }

  Welford w_mean;
  std::vector<Welford> w_cov(entrywise ? d * (d + 1) / 2 : 1);
  Welford w_entropy;
  Welford w_kl_uniform;
  std::vector<Welford> w_kl_vmf(vmfs.size());

  RandomStream rng(cell_seed(1));
  std::vector<double> centered(d);
  for (std::size_t done = 0; done < cfg.n_samples; done += kChunk) {
    const std::size_t n = std::min(kChunk, cfg.n_samples - done);
    for (const auto& s : sample(p, n, rng)) {
      w_mean.add(mu.dot(s.x));
      for (std::size_t i = 0; i < d; ++i) centered[i] = s.x[i] - m[i];
      if (entrywise) {
        std::size_t k = 0;
        for (std::size_t i = 0; i < d; ++i) {
          for (std::size_t j = i; j < d; ++j) w_cov[k++].add(centered[i] * centered[j]);
        }
      } else {
        double sq = 0.0;
        for (double v : centered) sq += v * v;
        w_cov[0].add(sq);
      }
      const double lp = log_prob(s.x, p);
      w_entropy.add(-lp);
      w_kl_uniform.add(lp + log_area);
      for (std::size_t k = 0; k < vmfs.size(); ++k) w_kl_vmf[k].add(lp - log_prob_vmf(s.x, vmfs[k]));
    }
  }

  rows.push_back(mc_row("mean", c, mean_coefficient(p), w_mean));
  if (entrywise) {
    const auto dense = cs.dense();
    std::size_t k = 0;
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = i; j < d; ++j) rows.push_back(mc_row("covariance", c, dense[i * d + j], w_cov[k++]));
    }
  } else {
    rows.push_back(mc_row("covariance", c, cs.coeff_mu + static_cast<double>(d) * cs.coeff_id, w_cov[0]));
  }
  rows.push_back(mc_row("entropy", c, entropy(p), w_entropy));
  rows.push_back(mc_row("kl_uniform", c, kl_from_uniform(p), w_kl_uniform));
  for (std::size_t k = 0; k < vmfs.size(); ++k) {
    rows.push_back(mc_row("kl_vmf", c, kl_to_vmf(p, vmfs[k]), w_kl_vmf[k], vmf_kappas[k]));
  }

  double worst = 0.0;
  for (std::size_t i = 0; i < cfg.roundtrip_points; ++i) {
    const double y = (static_cast<double>(i) + 0.5) / static_cast<double>(cfg.roundtrip_points);
    worst = std::max(worst, std::fabs(cdf_t(icdf_t(y, p.marginal()), p.marginal()) - y));
  }
  rows.push_back({"cdf_roundtrip", d, c.kappa, std::numeric_limits<double>::quiet_NaN(), 0.0, worst,
                  0.0, worst <= cfg.roundtrip_tol});

  RandomStream grad_rng(cell_seed(2));
  Welford w_grad;
  for (std::size_t done = 0; done < cfg.n_gradient; done += kChunk) {
    const std::size_t n = std::min(kChunk, cfg.n_gradient - done);
    for (const auto& s : sample(p, n, grad_rng, true)) w_grad.add(*s.dot_grad_kappa);
  }
  const double a = p.marginal().alpha();
  const double b = p.marginal().beta();
  rows.push_back(mc_row("gradient", c, 2.0 * b / ((a + b) * (a + b)), w_grad));
}

}  // namespace

std::vector<VerificationRow> run_verification(const VerifyConfig& config) {
  if (config.n_samples < 2 || config.n_gradient < 2) throw UsageError("need at least 2 samples");
  std::vector<VerificationRow> rows;
  for (const auto& c : config.cells) verify_cell(c, config, rows);
  return rows;
}

}  // namespace powersph::harness
