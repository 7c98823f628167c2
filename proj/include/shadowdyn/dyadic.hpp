#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace shadowdyn {

/// A point of the circle R/Z stored as a 512-bit binary fraction.
///
/// Addition, negation and multiplication by integers are exact and wrap
/// modulo 1, so integer toral automorphisms act without rounding. Conversion
/// to and from double is the only lossy step.
class Dyadic {
 public:
  static constexpr int kLimbs = 8;
  static constexpr int kBits = 64 * kLimbs;
  using Limbs = std::array<std::uint64_t, kLimbs>;  // little-endian

  constexpr Dyadic() = default;
  explicit constexpr Dyadic(const Limbs& limbs) : limbs_(limbs) {}

  /// Exact for every double in [0,1) above 2^-459; other inputs are reduced mod 1 first.
  static Dyadic from_double(double x);
  static Dyadic from_hex(std::string_view hex);

  /// Nearest double to the representative in [0,1).
  double to_double() const;
  /// Nearest double to the representative in [-1/2, 1/2).
  double to_signed_double() const;
  std::string to_hex() const;

  const Limbs& limbs() const { return limbs_; }
  bool is_zero() const;
  /// True when the representative in [-1/2, 1/2) is negative.
  bool negative_lift() const { return (limbs_[kLimbs - 1] >> 63) != 0; }

  Dyadic operator-() const;
  Dyadic& operator+=(const Dyadic& o);
  Dyadic& operator-=(const Dyadic& o);
  friend Dyadic operator+(Dyadic a, const Dyadic& b) { return a += b; }
  friend Dyadic operator-(Dyadic a, const Dyadic& b) { return a -= b; }
  /// Exact multiplication by an integer, modulo 1.
  Dyadic times(std::int64_t k) const;

  friend bool operator==(const Dyadic&, const Dyadic&) = default;

 private:
  Limbs limbs_{};
};

/// Circle distance min(t, 1-t) of the difference, evaluated on the exact lift.
double circle_distance(const Dyadic& a, const Dyadic& b);

}  // namespace shadowdyn
