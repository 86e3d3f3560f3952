#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "powersph/random.hpp"
#include "powersph/sphere.hpp"

namespace powersph {

/// von Mises-Fisher vMF(mu, kappa) on S^{d-1}, density C_X^{-1} exp(kappa mu^T x).
class VonMisesFisherParams {
 public:
  /// Throws DomainError unless mu.size() >= 2 and kappa is finite and >= 0.
  VonMisesFisherParams(Direction mu, double kappa);

  const Direction& mu() const noexcept { return mu_; }
  double kappa() const noexcept { return kappa_; }
  std::size_t d() const noexcept { return mu_.size(); }

 private:
  Direction mu_;
  double kappa_;
};

struct RejectionSampleReport {
  std::vector<double> x;
  double t;              // mu^T x as constructed
  long rejections;       // envelope rejections before acceptance
  std::optional<double> dot_grad_kappa;
};

/// log C_X(kappa, d) = (d/2) log(2 pi) + log I_{d/2-1}(kappa) - (d/2 - 1) log kappa,
/// i.e. the log partition value; log A_{d-1} at kappa = 0. Not guarded
/// against overflow: callers that probe stability inspect the result.
double log_normalizer_vmf(const VonMisesFisherParams& q);

/// kappa mu^T x - log C_X. Throws DomainError if |x| differs from 1 by more
/// than `unit_tol`.
double log_prob_vmf(std::span<const double> x, const VonMisesFisherParams& q,
                    double unit_tol = 1e-6);

/// Log of the marginal density of t = mu^T x:
/// log C_T + kappa t + ((d-3)/2) log(1 - t^2).
double log_marginal_pdf_vmf(double t, const VonMisesFisherParams& q);

/// exp(log_marginal_pdf_vmf).
double marginal_pdf_vmf(double t, const VonMisesFisherParams& q);

/// Constants of the Wood (1994) envelope for Ulrich's marginal sampler:
///   b  = (-2 kappa + sqrt(4 kappa^2 + (d-1)^2)) / (d - 1)
///   x0 = (1 - b) / (1 + b)
///   c  = kappa x0 + (d - 1) log(1 - x0^2)
/// A proposal eps ~ Beta((d-1)/2, (d-1)/2) maps to
///   w = (1 - (1 + b) eps) / (1 - (1 - b) eps)
/// and is accepted when kappa w + (d-1) log(1 - x0 w) - c >= log u.
/// The formulas are used as written, without rescaling for kappa >> d.
struct WoodEnvelope {
  double b;
  double x0;
  double c;
  double db_dkappa;

  static WoodEnvelope make(std::size_t d, double kappa);
};

/// Rejection sampler. Throws NumericError (RejectionCap) after 10^6
/// rejections and NumericError (NonFinite) if the acceptance test yields
/// NaN. With `want_gradient`, dot_grad_kappa = dw/dkappa along the accepted
/// proposal (eps held fixed; no correction term for the rejection step).
RejectionSampleReport sample_vmf(const VonMisesFisherParams& q, RandomStream& rng,
                                 bool want_gradient = false);

/// Batch of n independent draws sharing the envelope and reflection.
std::vector<RejectionSampleReport> sample_vmf(const VonMisesFisherParams& q, std::size_t n,
                                              RandomStream& rng, bool want_gradient = false);

inline constexpr long kVmfRejectionCap = 1'000'000;

}  // namespace powersph
