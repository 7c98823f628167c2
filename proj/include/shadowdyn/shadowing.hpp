#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>

#include "shadowdyn/certificate.hpp"
#include "shadowdyn/circle.hpp"
#include "shadowdyn/product.hpp"
#include "shadowdyn/pseudo_orbit.hpp"
#include "shadowdyn/sequence.hpp"
#include "shadowdyn/torus.hpp"

namespace shadowdyn {

inline constexpr double kNoBound = std::numeric_limits<double>::infinity();

/// A true orbit point `point` whose orbit stays within achieved_eps of the
/// pseudo-orbit at every index of [lo, hi]. `tail_bound` bounds the
/// deviation outside the window (0 when the tails agree exactly; negative
/// when the oracle does not certify the tails).
template <class P>
struct ShadowResult {
  P point;
  double achieved_eps = 0.0;
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  double tail_bound = 0.0;
  Json details = Json::object();
};

/// delta such that every delta-pseudo-orbit is eps-shadowed.
struct ShadowingModulus {
  double eps = 0.0;
  double delta = 0.0;
  std::string system;
  Json constants = Json::object();

  Json to_json() const { return {{"eps", eps}, {"delta", delta}, {"system", system}, {"constants", constants}}; }
};

// Each oracle throws DynamicsError when its precondition on the defect fails
// or when the verified deviation exceeds eps.

/// Bounded solution of the linearized error equation in the eigenbasis,
/// evaluated in 576-bit arithmetic; the shadow point is exact to 2^-512.
ShadowResult<TorusPoint> shadow(const PseudoOrbit<ToralAutomorphism>& po, double eps = kNoBound);
/// Coordinate-0 read-off z_n = (x_n)_0.
ShadowResult<SymbolSeq> shadow(const PseudoOrbit<FullShift>& po, double eps = kNoBound);
ShadowResult<CubeSeq> shadow(const PseudoOrbit<CubeShift>& po, double eps = kNoBound);
/// Scan plus golden-section search for the seed minimizing the window deviation.
ShadowResult<CirclePoint> shadow(const PseudoOrbit<NorthSouth>& po, double eps = kNoBound);
ShadowResult<CirclePoint> shadow(const PseudoOrbit<CircleRotation>& po, double eps = kNoBound);

template <DynamicalSystem X, DynamicalSystem Y>
ShadowResult<ProductPoint<PointOf<X>, PointOf<Y>>> shadow(const PseudoOrbit<Product<X, Y>>& po, double eps = kNoBound) {
  std::vector<PointOf<X>> ls;
  std::vector<PointOf<Y>> rs;
  for (const auto& p : po.points()) {
    ls.push_back(p.left);
    rs.push_back(p.right);
  }
  const auto a = shadow(PseudoOrbit<X>(po.system().left(), po.lo(), std::move(ls)), eps);
  const auto b = shadow(PseudoOrbit<Y>(po.system().right(), po.lo(), std::move(rs)), eps);
  ShadowResult<ProductPoint<PointOf<X>, PointOf<Y>>> r;
  r.point = {a.point, b.point};
  r.achieved_eps = std::max(a.achieved_eps, b.achieved_eps);
  r.lo = po.lo();
  r.hi = po.hi();
  r.tail_bound = (a.tail_bound < 0 || b.tail_bound < 0) ? -1.0 : std::max(a.tail_bound, b.tail_bound);
  r.details = {{"left", a.details}, {"right", b.details}, {"left_eps", a.achieved_eps}, {"right_eps", b.achieved_eps}};
  return r;
}

inline auto shadow_cat(const PseudoOrbit<ToralAutomorphism>& po, double eps = kNoBound) { return shadow(po, eps); }
inline auto shadow_shift(const PseudoOrbit<FullShift>& po, double eps = kNoBound) { return shadow(po, eps); }
inline auto shadow_cube(const PseudoOrbit<CubeShift>& po, double eps = kNoBound) { return shadow(po, eps); }
inline auto shadow_ns(const PseudoOrbit<NorthSouth>& po, double eps = kNoBound) { return shadow(po, eps); }

/// delta = eps * (1 - max(1/|lambda_u|, |lambda_s|)) / (2c).
ShadowingModulus modulus(const ToralAutomorphism& sys, double eps, std::uint64_t seed = 0);
/// delta = eps / 2.
ShadowingModulus modulus(const FullShift& sys, double eps, std::uint64_t seed = 0);
ShadowingModulus modulus(const CubeShift& sys, double eps, std::uint64_t seed = 0);
/// Largest eps*2^-j (j >= 1) for which seeded random and adversarial
/// pseudo-orbits are all shadowed within eps by the search oracle.
ShadowingModulus modulus(const NorthSouth& sys, double eps, std::uint64_t seed = 0);
ShadowingModulus modulus(const CircleRotation& sys, double eps, std::uint64_t seed = 0);

template <DynamicalSystem X, DynamicalSystem Y>
ShadowingModulus modulus(const Product<X, Y>& sys, double eps, std::uint64_t seed = 0) {
  if (!(eps > 0 && eps <= sys.diameter_bound())) throw std::invalid_argument("modulus: eps out of range");
  const auto a = modulus(sys.left(), std::min(eps, sys.left().diameter_bound()), seed);
  const auto b = modulus(sys.right(), std::min(eps, sys.right().diameter_bound()), seed);
  ShadowingModulus m;
  m.eps = eps;
  m.delta = std::min(a.delta, b.delta);
  m.system = "product";
  m.constants = {{"left", a.to_json()}, {"right", b.to_json()}};
  return m;
}

/// Checks d(f^n(z), x_n) <= eps for every n in [-horizon, horizon], with x_n
/// extended beyond the window by true orbits.
template <DynamicalSystem S>
Certificate verify_shadowing(const PseudoOrbit<S>& po, const PointOf<S>& z, double eps, std::int64_t horizon) {
  if (horizon < 0) throw std::invalid_argument("verify_shadowing: negative horizon");
  const auto& sys = po.system();
  Certificate c;
  c.kind = "shadowing";
  c.bound = eps;
  c.horizon = horizon;
  auto check = [&](std::int64_t n, double d) {
    if (d > c.worst_value) {
      c.worst_value = d;
      c.worst_index = n;
    }
  };
  // z and x_0 advance together in each direction.
  PointOf<S> y = z;
  PointOf<S> x = po.at(0);
  check(0, sys.dist(y, x));
  for (std::int64_t n = 1; n <= horizon; ++n) {
    y = sys.apply(y);
    x = n <= po.hi() ? po[n] : sys.apply(x);
    check(n, sys.dist(y, x));
  }
  y = z;
  x = po.at(0);
  for (std::int64_t n = -1; n >= -horizon; --n) {
    y = sys.inverse(y);
    x = n >= po.lo() ? po[n] : sys.inverse(x);
    check(n, sys.dist(y, x));
  }
  c.pass = c.worst_value <= eps;
  c.extra = {{"system", std::string(S::kind)}, {"lo", po.lo()}, {"hi", po.hi()}};
  return c;
}

}  // namespace shadowdyn
