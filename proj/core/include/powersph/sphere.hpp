#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "powersph/random.hpp"

namespace powersph {

/// Unit vector on S^{n-1}. Construction either validates or normalizes;
/// a Direction is never observed with a norm off by more than the
/// validation tolerance.
class Direction {
 public:
  static constexpr double kUnitTolerance = 1e-12;

  /// Accepts values whose Euclidean norm is within `tol` of one; throws
  /// DomainError otherwise.
  static Direction from_unit(std::vector<double> values, double tol = kUnitTolerance);

  /// Rescales values to unit norm; throws DomainError on a zero or
  /// non-finite vector.
  static Direction normalized(std::vector<double> values);

  /// Canonical basis vector e_i in R^d.
  static Direction basis(std::size_t d, std::size_t i);

  /// Isotropic random direction in R^d.
  static Direction random(std::size_t d, RandomStream& rng);

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }
  const std::vector<double>& vector() const noexcept { return values_; }

  double dot(std::span<const double> other) const;

 private:
  explicit Direction(std::vector<double> values) : values_(std::move(values)) {}
  std::vector<double> values_;
};

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);

/// Reflection I - 2 u u^T with u = (e1 - mu) / |e1 - mu|, mapping e1 onto mu.
/// When |e1 - mu| < 1e-12 the map is the identity.
class HouseholderReflector {
 public:
  static constexpr double kDegenerateNorm = 1e-12;

  explicit HouseholderReflector(const Direction& mu);

  bool is_identity() const noexcept { return u_.empty(); }
  std::size_t size() const noexcept { return d_; }

  /// Reflects y in place; y.size() must equal the dimension of mu.
  void apply(std::span<double> y) const;

 private:
  std::size_t d_;
  std::vector<double> u_;
};

/// Returns (I - 2 u u^T) y for the reflection taking e1 to mu.
std::vector<double> householder_reflect(std::span<const double> y, const Direction& mu);

/// Writes an isotropic unit vector into `out` (normalized Gaussian draw).
/// For out.size() == 1 the value is -1 or +1 with equal probability.
void fill_uniform_subsphere(std::span<double> out, RandomStream& rng);

/// Uniform draw on S^{d_sub - 1}, represented with d_sub coordinates.
Direction sample_uniform_subsphere(std::size_t d_sub, RandomStream& rng);

/// log of the surface area A_{d-1} = 2 pi^{d/2} / Gamma(d/2) of S^{d-1}.
double log_sphere_area(std::size_t d);

}  // namespace powersph
