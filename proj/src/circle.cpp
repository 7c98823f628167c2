#include "shadowdyn/circle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace shadowdyn {

double wrap01(double x) {
  double r = x - std::floor(x);
  if (r >= 1.0) r = 0.0;
  return r;
}

double circle_dist(double a, double b) {
  const double d = wrap01(a - b);
  return std::min(d, 1.0 - d);
}

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double ns_lift(double s) { return s - NorthSouth::kAmplitude * std::sin(kTwoPi * s); }
}  // namespace

CirclePoint NorthSouth::forward(const CirclePoint& p) { return {wrap01(ns_lift(p.t))}; }

CirclePoint NorthSouth::backward(const CirclePoint& p) {
  // The lift is increasing with lift(s+1) = lift(s)+1, so the preimage of t
  // in [0,1) lies in [t - a, t + a].
  const double t = p.t;
  double lo = t - kAmplitude;
  double hi = t + kAmplitude;
  double s = t;
  for (int it = 0; it < 100; ++it) {
    const double g = ns_lift(s) - t;
    if (g > 0) hi = s;
    else lo = s;
    const double dg = 1.0 - kTwoPi * kAmplitude * std::cos(kTwoPi * s);
    double next = s - g / dg;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::fabs(next - s) < 1e-16 || hi - lo < 1e-16) {
      s = next;
      break;
    }
    s = next;
  }
  return {wrap01(s)};
}

CirclePoint NorthSouth::sample_near(const CirclePoint& p, double r, Rng& rng) const {
  const double rr = 0.999 * std::min(r, 0.5);
  return {wrap01(p.t + rng.uniform(-rr, rr))};
}

DerivativeBounds ns_derivative_bounds(double cell) {
  const double c = kTwoPi * NorthSouth::kAmplitude;
  // |d/dt cos(2 pi t)| <= 2 pi, so on a cell of width h centered at m the
  // cosine lies within h*pi of cos(2 pi m).
  const auto cells = static_cast<long>(std::ceil(1.0 / cell));
  DerivativeBounds b{1e300, -1e300};
  for (long i = 0; i < cells; ++i) {
    const double m = (static_cast<double>(i) + 0.5) * cell;
    const double cm = std::cos(kTwoPi * m);
    const double slack = std::numbers::pi * cell + 1e-15;
    const double cos_hi = std::min(1.0, cm + slack);
    const double cos_lo = std::max(-1.0, cm - slack);
    b.lower = std::min(b.lower, 1.0 - c * cos_hi);
    b.upper = std::max(b.upper, 1.0 - c * cos_lo);
  }
  return b;
}

CirclePoint CircleRotation::sample_near(const CirclePoint& p, double r, Rng& rng) const {
  const double rr = 0.999 * std::min(r, 0.5);
  return {wrap01(p.t + rng.uniform(-rr, rr))};
}

CirclePoint ns_apply(const CirclePoint& p) { return NorthSouth::forward(p); }
CirclePoint ns_inverse(const CirclePoint& p) { return NorthSouth::backward(p); }

}  // namespace shadowdyn
