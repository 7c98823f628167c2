#pragma once

#include <string_view>

#include "shadowdyn/random.hpp"

namespace shadowdyn {

struct CirclePoint {
  double t = 0.0;  // in [0,1)
  friend bool operator==(const CirclePoint&, const CirclePoint&) = default;
};

/// Representative of x mod 1 in [0,1).
double wrap01(double x);
/// min(|a-b| mod 1, 1 - |a-b| mod 1).
double circle_dist(double a, double b);

/// North-south map t -> t - a*sin(2 pi t) mod 1 with a = 0.1: attracting
/// fixed point at 0, repelling at 1/2. `inverted` selects the inverse map.
class NorthSouth {
 public:
  using Point = CirclePoint;
  static constexpr std::string_view kind = "ns";
  static constexpr bool exact = false;
  static constexpr double kAmplitude = 0.1;

  explicit NorthSouth(bool inverted = false) : inverted_(inverted) {}

  Point apply(const Point& p) const { return inverted_ ? backward(p) : forward(p); }
  Point inverse(const Point& p) const { return inverted_ ? forward(p) : backward(p); }
  double dist(const Point& p, const Point& q) const { return circle_dist(p.t, q.t); }
  double diameter_bound() const { return 0.5; }
  Point sample(Rng& rng) const { return {rng.uniform()}; }
  Point sample_near(const Point& p, double r, Rng& rng) const;
  NorthSouth inverse_system() const { return NorthSouth(!inverted_); }

  bool inverted() const { return inverted_; }
  friend bool operator==(const NorthSouth&, const NorthSouth&) = default;

  static Point forward(const Point& p);
  /// Solves s - a*sin(2 pi s) = t by safeguarded Newton to below 1e-14.
  static Point backward(const Point& p);

 private:
  bool inverted_;
};

/// Lower and upper bounds of the north-south derivative 1 - 2 pi a cos(2 pi t),
/// enclosed cell by cell on a uniform grid of the given width.
struct DerivativeBounds {
  double lower;
  double upper;
};
DerivativeBounds ns_derivative_bounds(double cell = 1e-4);

/// t -> t + angle mod 1. Angle 0 is the identity map.
class CircleRotation {
 public:
  using Point = CirclePoint;
  static constexpr std::string_view kind = "rotation";
  static constexpr bool exact = false;

  explicit CircleRotation(double angle = 0.0) : angle_(angle) {}

  Point apply(const Point& p) const { return {wrap01(p.t + angle_)}; }
  Point inverse(const Point& p) const { return {wrap01(p.t - angle_)}; }
  double dist(const Point& p, const Point& q) const { return circle_dist(p.t, q.t); }
  double diameter_bound() const { return 0.5; }
  Point sample(Rng& rng) const { return {rng.uniform()}; }
  Point sample_near(const Point& p, double r, Rng& rng) const;
  CircleRotation inverse_system() const { return CircleRotation(-angle_); }

  double angle() const { return angle_; }
  friend bool operator==(const CircleRotation&, const CircleRotation&) = default;

 private:
  double angle_;
};

CirclePoint ns_apply(const CirclePoint& p);
CirclePoint ns_inverse(const CirclePoint& p);

}  // namespace shadowdyn
