#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "powersph/marginal_t.hpp"
#include "powersph/random.hpp"
#include "powersph/sphere.hpp"
#include "powersph/vmf.hpp"

namespace powersph {

/// Power Spherical distribution on S^{d-1}, density proportional to
/// (1 + mu^T x)^kappa.
class PowerSphericalParams {
 public:
  /// Throws DomainError unless mu.size() >= 2 and kappa is finite and >= 0.
  PowerSphericalParams(Direction mu, double kappa);

  const Direction& mu() const noexcept { return mu_; }
  double kappa() const noexcept { return marginal_.kappa(); }
  std::size_t d() const noexcept { return mu_.size(); }
  const MarginalTParams& marginal() const noexcept { return marginal_; }

 private:
  Direction mu_;
  MarginalTParams marginal_;
};

struct SphericalSample {
  std::vector<double> x;
  double t;  // mu^T x as constructed
  std::optional<double> dot_grad_kappa;
};

/// var(X) = coeff_mu * mu mu^T + coeff_id * I_d, kept in factored form.
struct CovarianceStructure {
  double coeff_mu;
  double coeff_id;
  Direction mu;

  std::size_t d() const noexcept { return mu.size(); }

  /// var(X) v without forming the d x d matrix.
  std::vector<double> apply(std::span<const double> v) const;

  /// Row-major dense matrix; throws DomainError for d > kMaxDenseDim.
  std::vector<double> dense() const;

  static constexpr std::size_t kMaxDenseDim = 10'000;
};

/// log N_X = (alpha + beta) log 2 + beta log pi + log Gamma(alpha) - log Gamma(alpha + beta).
double log_normalizer(const PowerSphericalParams& p);

/// kappa log1p(mu^T x) - log N_X, with mu^T x clamped to [-1, 1].
/// Throws DomainError if |x| differs from 1 by more than `unit_tol`.
double log_prob(std::span<const double> x, const PowerSphericalParams& p, double unit_tol = 1e-6);

/// Draws n samples: t from the marginal, v uniform on S^{d-2},
/// y = [t, v sqrt(1 - t^2)], x = H y with H the reflection e1 -> mu.
/// With `want_gradient`, dot_grad_kappa = d(mu^T x)/dkappa = 2 dz/dkappa.
std::vector<SphericalSample> sample(const PowerSphericalParams& p, std::size_t n, RandomStream& rng,
                                    bool want_gradient = false);

/// E[X] = mu kappa / (d - 1 + kappa).
std::vector<double> mean(const PowerSphericalParams& p);

/// The mean coefficient (alpha - beta) / (alpha + beta) = E[mu^T X].
double mean_coefficient(const PowerSphericalParams& p);

/// Returns mu; throws DomainError for kappa = 0, where every point is a mode.
Direction mode(const PowerSphericalParams& p);

CovarianceStructure covariance(const PowerSphericalParams& p);

/// H(X) = log N_X - kappa (log 2 + psi(alpha) - psi(alpha + beta)).
double entropy(const PowerSphericalParams& p);

/// KL(P || U(S^{d-1})) = log A_{d-1} - H(P).
double kl_from_uniform(const PowerSphericalParams& p);

/// KL(P || vMF(mu_q, kappa_q)) = -H(P) + log C_X(kappa_q) - kappa_q mu_q^T mu_p mean_coefficient(P).
/// Throws DomainError on dimension mismatch.
double kl_to_vmf(const PowerSphericalParams& p, const VonMisesFisherParams& q);

}  // namespace powersph
