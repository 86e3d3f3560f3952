#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace powersph {

/// Pair of Beta draws computed from the same two Gamma variates, so that
/// both z and 1 - z keep full relative precision near 0.
struct BetaDraw {
  double z;
  double one_minus_z;
};

/// Seeded source of randomness. The engine is std::mt19937_64 (bit-exact
/// across standard libraries); every transform on top of it is implemented
/// here so sample streams are reproducible everywhere for a given seed.
///
/// Not thread-safe: give each worker its own stream (see derive_seed).
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on the open interval (0, 1), 53 bits of resolution.
  double uniform();

  /// Standard normal (Marsaglia polar method).
  double normal();

  /// Gamma(shape, 1) by Marsaglia-Tsang squeeze; shape < 1 uses the
  /// Gamma(shape + 1) * U^(1/shape) boost.
  double gamma(double shape);

  /// Beta(a, b) via two independent Gamma variates.
  BetaDraw beta(double a, double b);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

/// Mixes a master seed with any number of stream identifiers (splitmix64),
/// giving independent, order-sensitive child seeds.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> ids);

/// Bit pattern of a double, for use as a derive_seed identifier.
std::uint64_t seed_id(double value);

}  // namespace powersph
