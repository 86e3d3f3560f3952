#include "powersph/sphere.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "powersph/errors.hpp"
#include "powersph/specfun.hpp"

namespace powersph {

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DomainError("dot: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

Direction Direction::from_unit(std::vector<double> values, double tol) {
  if (values.empty()) throw DomainError("Direction: empty vector");
  const double n = norm(values);
  if (!std::isfinite(n) || std::fabs(n - 1.0) > tol) {
    throw DomainError("Direction: vector is not unit-norm (|x| = " + std::to_string(n) + ")");
  }
  return Direction(std::move(values));
}

Direction Direction::normalized(std::vector<double> values) {
  if (values.empty()) throw DomainError("Direction: empty vector");
  const double n = norm(values);
  if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("Direction: cannot normalize vector");
  for (auto& v : values) v /= n;
  return Direction(std::move(values));
}

Direction Direction::basis(std::size_t d, std::size_t i) {
  if (i >= d) throw DomainError("Direction::basis: index out of range");
  std::vector<double> v(d, 0.0);
  v[i] = 1.0;
  return Direction(std::move(v));
}

Direction Direction::random(std::size_t d, RandomStream& rng) {
  return sample_uniform_subsphere(d, rng);
}

double Direction::dot(std::span<const double> other) const { return powersph::dot(values_, other); }

HouseholderReflector::HouseholderReflector(const Direction& mu) : d_(mu.size()) {
  double tail_sq = 0.0;
  for (std::size_t i = 1; i < d_; ++i) tail_sq += mu[i] * mu[i];
  // 1 - mu_0 without cancellation when mu is close to e1.
  const double head = mu[0] > 0.0 ? tail_sq / (1.0 + mu[0]) : 1.0 - mu[0];
  const double n = std::sqrt(head * head + tail_sq);
  if (n < kDegenerateNorm) return;
  u_.resize(d_);
  u_[0] = head / n;
  for (std::size_t i = 1; i < d_; ++i) u_[i] = -mu[i] / n;
}

void HouseholderReflector::apply(std::span<double> y) const {
  if (y.size() != d_) throw DomainError("HouseholderReflector: dimension mismatch");
  if (is_identity()) return;
  double proj = 0.0;
  for (std::size_t i = 0; i < d_; ++i) proj += u_[i] * y[i];
  proj *= 2.0;
  for (std::size_t i = 0; i < d_; ++i) y[i] -= proj * u_[i];
}

std::vector<double> householder_reflect(std::span<const double> y, const Direction& mu) {
  std::vector<double> out(y.begin(), y.end());
  HouseholderReflector(mu).apply(out);
  return out;
}

void fill_uniform_subsphere(std::span<double> out, RandomStream& rng) {
  if (out.empty()) throw DomainError("fill_uniform_subsphere: empty output");
  if (out.size() == 1) {
    out[0] = rng.uniform() < 0.5 ? -1.0 : 1.0;
    return;
  }
  double sq = 0.0;
  do {
    sq = 0.0;
    for (auto& v : out) {
      v = rng.normal();
      sq += v * v;
    }
  } while (!(sq > 0.0));
  const double inv = 1.0 / std::sqrt(sq);
  for (auto& v : out) v *= inv;
}

Direction sample_uniform_subsphere(std::size_t d_sub, RandomStream& rng) {
  if (d_sub < 1) throw DomainError("sample_uniform_subsphere: need at least one coordinate");
  std::vector<double> v(d_sub);
  fill_uniform_subsphere(v, rng);
  return Direction::from_unit(std::move(v), 1e-10);
}

double log_sphere_area(std::size_t d) {
  if (d < 1) throw DomainError("log_sphere_area: d must be >= 1");
  const double half_d = 0.5 * static_cast<double>(d);
  return std::numbers::ln2 + half_d * std::log(std::numbers::pi) - specfun::log_gamma(half_d);
}

}  // namespace powersph
