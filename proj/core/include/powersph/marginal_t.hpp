#pragma once

#include <cstddef>
#include <optional>

#include "powersph/random.hpp"

namespace powersph {

/// Law of t = mu^T x for a Power Spherical on S^{d-1}: T = 2Z - 1 with
/// Z ~ Beta(alpha, beta), alpha = (d-1)/2 + kappa, beta = (d-1)/2.
class MarginalTParams {
 public:
  /// Throws DomainError unless d >= 2 and kappa is finite and >= 0.
  MarginalTParams(std::size_t d, double kappa);

  std::size_t d() const noexcept { return d_; }
  double kappa() const noexcept { return kappa_; }
  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }

 private:
  std::size_t d_;
  double kappa_;
  double alpha_;
  double beta_;
};

/// One draw of the marginal. `one_minus_z` is computed from the same Gamma
/// pair as `z`, not as 1 - z.
struct TSample {
  double t;
  double z;
  double one_minus_z;
  std::optional<double> dz_dkappa;
};

/// log N_T = (alpha + beta - 1) log 2 + log B(alpha, beta).
double log_normalizer_t(const MarginalTParams& p);

/// Log density of t on [-1, 1]. Endpoints may give -inf (or +inf for d = 2).
double log_pdf_t(double t, const MarginalTParams& p);

/// F(t) = I_{(t+1)/2}(alpha, beta).
double cdf_t(double t, const MarginalTParams& p);

/// F^{-1}(y) = 2 I^{-1}_y(alpha, beta) - 1.
double icdf_t(double y, const MarginalTParams& p);

/// Differential entropy H(T) = H(Beta(alpha, beta)) + log 2.
double entropy_t(const MarginalTParams& p);

/// Implicit reparameterization gradient dz/dalpha of a Beta(a, b) draw at
/// z (with complement y):
///
///   dz/da = -(dI_z(a, b)/da) / pdf(z; a, b)
///
/// The parameter derivative of the incomplete Beta is a central difference
/// with step h = 1e-4 * max(1, a), taken on whichever tail of I is smaller.
double beta_implicit_gradient(double z, double y, double a, double b);

/// Draws t. With `want_gradient`, also fills dz_dkappa (= dz/dalpha, since
/// dalpha/dkappa = 1).
TSample sample_t(const MarginalTParams& p, RandomStream& rng, bool want_gradient = false);

}  // namespace powersph
