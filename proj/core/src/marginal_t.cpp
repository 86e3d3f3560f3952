#include "powersph/marginal_t.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "powersph/errors.hpp"
#include "powersph/specfun.hpp"

namespace powersph {
namespace {

double xlogy(double coef, double logv) { return coef == 0.0 ? 0.0 : coef * logv; }

void require_t(double t, const char* fn) {
  if (!(t >= -1.0 && t <= 1.0)) {
    throw DomainError(std::string(fn) + ": t must lie in [-1, 1], got " + std::to_string(t));
  }
}

}  // namespace

MarginalTParams::MarginalTParams(std::size_t d, double kappa) : d_(d), kappa_(kappa) {
  if (d < 2) throw DomainError("MarginalTParams: dimension must be >= 2");
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
    throw DomainError("MarginalTParams: kappa must be finite and >= 0");
  }
  beta_ = 0.5 * static_cast<double>(d - 1);
  alpha_ = beta_ + kappa_;
}

double log_normalizer_t(const MarginalTParams& p) {
  return (p.alpha() + p.beta() - 1.0) * std::numbers::ln2 + specfun::log_beta(p.alpha(), p.beta());
}

double log_pdf_t(double t, const MarginalTParams& p) {
  require_t(t, "log_pdf_t");
  // (1 + t)^kappa (1 - t^2)^((d-3)/2) = (1 + t)^(alpha - 1) (1 - t)^(beta - 1)
  return xlogy(p.alpha() - 1.0, std::log1p(t)) + xlogy(p.beta() - 1.0, std::log1p(-t)) -
         log_normalizer_t(p);
}

double cdf_t(double t, const MarginalTParams& p) {
  require_t(t, "cdf_t");
  return specfun::reg_inc_beta(0.5 * (1.0 + t), 0.5 * (1.0 - t), p.alpha(), p.beta());
}

double icdf_t(double y, const MarginalTParams& p) {
  if (!(y >= 0.0 && y <= 1.0)) throw DomainError("icdf_t: y must lie in [0, 1]");
  return 2.0 * specfun::inv_reg_inc_beta(y, p.alpha(), p.beta()) - 1.0;
}

double entropy_t(const MarginalTParams& p) {
  const double a = p.alpha();
  const double b = p.beta();
  return specfun::log_beta(a, b) + (a + b - 2.0) * specfun::digamma(a + b) -
         (a - 1.0) * specfun::digamma(a) - (b - 1.0) * specfun::digamma(b) + std::numbers::ln2;
}

double beta_implicit_gradient(double z, double y, double a, double b) {
  const double h = 1e-4 * std::max(1.0, a);
  const double lower = specfun::reg_inc_beta(z, y, a, b);
  double dcdf_da;
  if (lower <= 0.5) {
    dcdf_da = (specfun::reg_inc_beta(z, y, a + h, b) - specfun::reg_inc_beta(z, y, a - h, b)) /
              (2.0 * h);
  } else {
    // I_z(a, b) = 1 - I_y(b, a); differentiate the small upper tail instead.
    dcdf_da = -(specfun::reg_inc_beta(y, z, b, a + h) - specfun::reg_inc_beta(y, z, b, a - h)) /
              (2.0 * h);
  }
  const double pdf = std::exp(specfun::log_beta_pdf(z, y, a, b));
  return -dcdf_da / pdf;
}

TSample sample_t(const MarginalTParams& p, RandomStream& rng, bool want_gradient) {
  const BetaDraw draw = rng.beta(p.alpha(), p.beta());
  TSample s{};
  s.z = draw.z;
  s.one_minus_z = draw.one_minus_z;
  s.t = draw.z < 0.5 ? 2.0 * draw.z - 1.0 : 1.0 - 2.0 * draw.one_minus_z;
  if (want_gradient) {
    s.dz_dkappa = beta_implicit_gradient(draw.z, draw.one_minus_z, p.alpha(), p.beta());
  }
  return s;
}

}  // namespace powersph
