#include "powersph/vmf.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "powersph/errors.hpp"
#include "powersph/specfun.hpp"

namespace powersph {
namespace {

double xlogy(double coef, double logv) { return coef == 0.0 ? 0.0 : coef * logv; }

}  // namespace

VonMisesFisherParams::VonMisesFisherParams(Direction mu, double kappa)
    : mu_(std::move(mu)), kappa_(kappa) {
  if (mu_.size() < 2) throw DomainError("VonMisesFisherParams: dimension must be >= 2");
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
    throw DomainError("VonMisesFisherParams: kappa must be finite and >= 0");
  }
}

double log_normalizer_vmf(const VonMisesFisherParams& q) {
  const double kappa = q.kappa();
  if (kappa == 0.0) return log_sphere_area(q.d());
  const double half_d = 0.5 * static_cast<double>(q.d());
  const double order = half_d - 1.0;
  return half_d * std::log(2.0 * std::numbers::pi) + specfun::log_bessel_i(order, kappa) -
         xlogy(order, std::log(kappa));
}

double log_prob_vmf(std::span<const double> x, const VonMisesFisherParams& q, double unit_tol) {
  if (x.size() != q.d()) throw DomainError("log_prob_vmf: dimension mismatch");
  const double n = norm(x);
  if (!(std::fabs(n - 1.0) <= unit_tol)) throw DomainError("log_prob_vmf: x is not unit-norm");
  return q.kappa() * q.mu().dot(x) - log_normalizer_vmf(q);
}

double log_marginal_pdf_vmf(double t, const VonMisesFisherParams& q) {
  if (!(t >= -1.0 && t <= 1.0)) throw DomainError("marginal_pdf_vmf: t must lie in [-1, 1]");
  const double d = static_cast<double>(q.d());
  const double kappa = q.kappa();
  double log_ct;
  if (kappa == 0.0) {
    log_ct = -specfun::log_beta(0.5 * (d - 1.0), 0.5);
  } else {
    const double order = 0.5 * d - 1.0;
    log_ct = xlogy(order, std::log(0.5 * kappa)) - specfun::log_gamma(0.5 * (d - 1.0)) -
             0.5 * std::log(std::numbers::pi) - specfun::log_bessel_i(order, kappa);
  }
  const double shape = 0.5 * (d - 3.0);
  return log_ct + kappa * t + xlogy(shape, std::log1p(t)) + xlogy(shape, std::log1p(-t));
}

double marginal_pdf_vmf(double t, const VonMisesFisherParams& q) {
  return std::exp(log_marginal_pdf_vmf(t, q));
}

WoodEnvelope WoodEnvelope::make(std::size_t d, double kappa) {
  const double m1 = static_cast<double>(d) - 1.0;
  const double root = std::sqrt(4.0 * kappa * kappa + m1 * m1);
  WoodEnvelope env{};
  env.b = (-2.0 * kappa + root) / m1;
  env.x0 = (1.0 - env.b) / (1.0 + env.b);
  env.c = kappa * env.x0 + m1 * std::log(1.0 - env.x0 * env.x0);
  env.db_dkappa = (-2.0 + 4.0 * kappa / root) / m1;
  return env;
}

namespace {

RejectionSampleReport sample_vmf_one(const VonMisesFisherParams& q, const WoodEnvelope& env,
                                     const HouseholderReflector& reflector, RandomStream& rng,
                                     bool want_gradient) {
  const std::size_t d = q.d();
  const double kappa = q.kappa();
  const double m1 = static_cast<double>(d) - 1.0;
  const double shape = 0.5 * m1;

  RejectionSampleReport out{};
  out.rejections = 0;
  for (;;) {
    const BetaDraw eps = rng.beta(shape, shape);
    const double den = 1.0 - (1.0 - env.b) * eps.z;
    const double w = (1.0 - (1.0 + env.b) * eps.z) / den;
    const double u = rng.uniform();
    const double log_ratio = kappa * w + m1 * std::log(1.0 - env.x0 * w) - env.c;
    if (std::isnan(log_ratio)) {
      throw NumericError(NumericError::Kind::NonFinite,
                         "sample_vmf: acceptance ratio is NaN (d=" + std::to_string(d) +
                             ", kappa=" + std::to_string(kappa) + ")");
    }
    if (log_ratio >= std::log(u)) {
      // 1 - w^2 = 4 b eps (1 - eps) / den^2, free of cancellation near w = 1.
      const double radius = 2.0 * std::sqrt(env.b * eps.z * eps.one_minus_z) / std::fabs(den);
      out.t = w;
      out.x.resize(d);
      out.x[0] = w;
      fill_uniform_subsphere(std::span<double>(out.x).subspan(1), rng);
      for (std::size_t i = 1; i < d; ++i) out.x[i] *= radius;
      reflector.apply(out.x);
      if (want_gradient) {
        const double dw_db = -2.0 * eps.z * eps.one_minus_z / (den * den);
        out.dot_grad_kappa = dw_db * env.db_dkappa;
      }
      return out;
    }
    if (++out.rejections >= kVmfRejectionCap) {
      throw NumericError(NumericError::Kind::RejectionCap,
                         "sample_vmf: rejection cap exceeded (d=" + std::to_string(d) +
                             ", kappa=" + std::to_string(kappa) + ")");
    }
  }
}

}  // namespace

RejectionSampleReport sample_vmf(const VonMisesFisherParams& q, RandomStream& rng,
                                 bool want_gradient) {
  return sample_vmf_one(q, WoodEnvelope::make(q.d(), q.kappa()), HouseholderReflector(q.mu()), rng,
                        want_gradient);
}

std::vector<RejectionSampleReport> sample_vmf(const VonMisesFisherParams& q, std::size_t n,
                                              RandomStream& rng, bool want_gradient) {
  const WoodEnvelope env = WoodEnvelope::make(q.d(), q.kappa());
  const HouseholderReflector reflector(q.mu());
  std::vector<RejectionSampleReport> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(sample_vmf_one(q, env, reflector, rng, want_gradient));
  }
  return out;
}

}  // namespace powersph
