#include "powersph/power_spherical.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "powersph/errors.hpp"
#include "powersph/specfun.hpp"

namespace powersph {

PowerSphericalParams::PowerSphericalParams(Direction mu, double kappa)
    : mu_(std::move(mu)), marginal_(mu_.size(), kappa) {}

std::vector<double> CovarianceStructure::apply(std::span<const double> v) const {
  if (v.size() != d()) throw DomainError("CovarianceStructure::apply: dimension mismatch");
  const double proj = coeff_mu * mu.dot(v);
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = proj * mu[i] + coeff_id * v[i];
  return out;
}

std::vector<double> CovarianceStructure::dense() const {
  const std::size_t n = d();
  if (n > kMaxDenseDim) throw DomainError("CovarianceStructure::dense: dimension too large");
  std::vector<double> out(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out[i * n + j] = coeff_mu * mu[i] * mu[j] + (i == j ? coeff_id : 0.0);
    }
  }
  return out;
}

double log_normalizer(const PowerSphericalParams& p) {
  const double a = p.marginal().alpha();
  const double b = p.marginal().beta();
  // log Gamma(a) - log Gamma(a + b) = log B(a, b) - log Gamma(b)
  return (a + b) * std::numbers::ln2 + b * std::log(std::numbers::pi) + specfun::log_beta(a, b) -
         specfun::log_gamma(b);
}

double log_prob(std::span<const double> x, const PowerSphericalParams& p, double unit_tol) {
  if (x.size() != p.d()) throw DomainError("log_prob: dimension mismatch");
  const double n = norm(x);
  if (!(std::fabs(n - 1.0) <= unit_tol)) throw DomainError("log_prob: x is not unit-norm");
  const double t = std::clamp(p.mu().dot(x), -1.0, 1.0);
  const double kappa = p.kappa();
  const double unnorm = kappa == 0.0 ? 0.0 : kappa * std::log1p(t);
  return unnorm - log_normalizer(p);
}

std::vector<SphericalSample> sample(const PowerSphericalParams& p, std::size_t n, RandomStream& rng,
                                    bool want_gradient) {
  const std::size_t d = p.d();
  const HouseholderReflector reflector(p.mu());
  std::vector<SphericalSample> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const TSample ts = sample_t(p.marginal(), rng, want_gradient);
    SphericalSample s;
    s.t = ts.t;
    s.x.resize(d);
    s.x[0] = ts.t;
    fill_uniform_subsphere(std::span<double>(s.x).subspan(1), rng);
    // sqrt(1 - t^2) = 2 sqrt(z (1 - z))
    const double radius = 2.0 * std::sqrt(ts.z * ts.one_minus_z);
    for (std::size_t i = 1; i < d; ++i) s.x[i] *= radius;
    reflector.apply(s.x);
    if (ts.dz_dkappa) s.dot_grad_kappa = 2.0 * *ts.dz_dkappa;
    out.push_back(std::move(s));
  }
  return out;
}

double mean_coefficient(const PowerSphericalParams& p) {
  const double kappa = p.kappa();
  return kappa / (static_cast<double>(p.d()) - 1.0 + kappa);
}

std::vector<double> mean(const PowerSphericalParams& p) {
  const double c = mean_coefficient(p);
  std::vector<double> out(p.mu().vector());
  for (auto& v : out) v *= c;
  return out;
}

Direction mode(const PowerSphericalParams& p) {
  if (p.kappa() == 0.0) throw DomainError("mode: undefined for kappa = 0 (uniform distribution)");
  return p.mu();
}

CovarianceStructure covariance(const PowerSphericalParams& p) {
  const double a = p.marginal().alpha();
  const double b = p.marginal().beta();
  const double s = a + b;
  const double scale = 2.0 * a / (s * (s + 1.0));
  // (beta - alpha) = -kappa exactly.
  return CovarianceStructure{scale * (-p.kappa()) / s, scale, p.mu()};
}

double entropy(const PowerSphericalParams& p) {
  const double kappa = p.kappa();
  const double log_n = log_normalizer(p);
  if (kappa == 0.0) return log_n;
  const double a = p.marginal().alpha();
  const double b = p.marginal().beta();
  return log_n - kappa * (std::numbers::ln2 + specfun::digamma(a) - specfun::digamma(a + b));
}

double kl_from_uniform(const PowerSphericalParams& p) {
  if (p.kappa() == 0.0) return 0.0;
  return std::max(0.0, log_sphere_area(p.d()) - entropy(p));
}

double kl_to_vmf(const PowerSphericalParams& p, const VonMisesFisherParams& q) {
  if (p.d() != q.d()) throw DomainError("kl_to_vmf: dimension mismatch");
  const double cross = q.kappa() == 0.0
                           ? 0.0
                           : q.kappa() * q.mu().dot(p.mu().values()) * mean_coefficient(p);
  return -entropy(p) + log_normalizer_vmf(q) - cross;
}

}  // namespace powersph
