#pragma once

#include <cstdint>

namespace shadowdyn {

/// Splittable seed derivation. Every randomized pipeline takes one user seed;
/// independent streams are keyed by (stream, index) so results do not depend
/// on the order in which parallel workers run.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index = 0);

/// SplitMix64 generator with platform-independent real conversions.
class Rng {
 public:
  using result_type = std::uint64_t;
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  Rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index = 0) : state_(derive_seed(seed, stream, index)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() { return next(); }

  std::uint64_t next();
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);

 private:
  std::uint64_t state_;
};

// Stream identifiers used across the library.
namespace streams {
inline constexpr std::uint64_t kSampling = 1;
inline constexpr std::uint64_t kWitness = 2;
inline constexpr std::uint64_t kGraph = 3;
inline constexpr std::uint64_t kModulus = 4;
inline constexpr std::uint64_t kPseudoOrbit = 5;
inline constexpr std::uint64_t kBasin = 6;
}  // namespace streams

}  // namespace shadowdyn
