#pragma once

#include <concepts>
#include <string_view>

#include "shadowdyn/random.hpp"

namespace shadowdyn {

/// A homeomorphism of a compact metric space, given by value.
///
/// Systems are small immutable values; every operation is a pure function,
/// so one instance may be shared freely between threads. `exact` marks
/// systems whose map and inverse are computed without rounding, in which
/// case `inverse(apply(p)) == p` holds bit for bit.
template <class S>
concept DynamicalSystem = std::copyable<S> && requires(const S& s, const typename S::Point& p, double r, Rng& rng) {
  typename S::Point;
  { S::kind } -> std::convertible_to<std::string_view>;
  { S::exact } -> std::convertible_to<bool>;
  { s.apply(p) } -> std::same_as<typename S::Point>;
  { s.inverse(p) } -> std::same_as<typename S::Point>;
  { s.dist(p, p) } -> std::convertible_to<double>;
  { s.diameter_bound() } -> std::convertible_to<double>;
  { s.sample(rng) } -> std::same_as<typename S::Point>;
  { s.sample_near(p, r, rng) } -> std::same_as<typename S::Point>;
  { s.inverse_system() } -> std::same_as<S>;
};

template <DynamicalSystem S>
using PointOf = typename S::Point;

/// f^n(p) for any integer n (negative n iterates the inverse).
template <DynamicalSystem S>
PointOf<S> iterate(const S& sys, PointOf<S> p, long long n) {
  for (; n > 0; --n) p = sys.apply(p);
  for (; n < 0; ++n) p = sys.inverse(p);
  return p;
}

}  // namespace shadowdyn
