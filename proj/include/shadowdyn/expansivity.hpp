#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "shadowdyn/cantor.hpp"
#include "shadowdyn/certificate.hpp"
#include "shadowdyn/circle.hpp"
#include "shadowdyn/parallel.hpp"
#include "shadowdyn/product.hpp"
#include "shadowdyn/sequence.hpp"
#include "shadowdyn/torus.hpp"

namespace shadowdyn {

// Boundary rings of the closed ball B(x, r).

/// 32 directions on the max-norm square of radius r.
inline std::vector<TorusPoint> ball_ring(const ToralAutomorphism&, const TorusPoint& x, double r) {
  std::vector<TorusPoint> out;
  for (int j = 0; j < 32; ++j) {
    const double th = 2.0 * std::numbers::pi * j / 32.0;
    const double c = std::cos(th), s = std::sin(th);
    const double m = std::max(std::fabs(c), std::fabs(s));
    out.push_back(torus_displace(x, {c / m, s / m}, r));
  }
  return out;
}

inline std::vector<CirclePoint> circle_ring(const CirclePoint& x, double r) { return {{wrap01(x.t - r)}, {wrap01(x.t + r)}}; }
inline std::vector<CirclePoint> ball_ring(const NorthSouth&, const CirclePoint& x, double r) { return circle_ring(x, r); }
inline std::vector<CirclePoint> ball_ring(const CircleRotation&, const CirclePoint& x, double r) { return circle_ring(x, r); }

/// Alterations of coordinates +-m, the nearest ones inside the ball.
inline std::vector<SymbolSeq> ball_ring(const FullShift& sys, const SymbolSeq& x, double r) {
  const std::int64_t m = first_free_coordinate(r);
  std::vector<SymbolSeq> out;
  for (std::int64_t i : {-m, m}) {
    out.push_back(x.with(i, static_cast<std::uint8_t>((x.at(i) + 1) % sys.alphabet())));
    if (m == 0) break;
  }
  return out;
}

/// Coordinates +-m pushed to 0 and to 1.
inline std::vector<CubeSeq> ball_ring(const CubeShift&, const CubeSeq& x, double r) {
  const std::int64_t m = first_free_coordinate(r);
  std::vector<CubeSeq> out;
  for (std::int64_t i : {-m, m}) {
    out.push_back(x.with(i, 0.0));
    out.push_back(x.with(i, 1.0));
    if (m == 0) break;
  }
  return out;
}

/// ring_X x {y} together with {x} x ring_Y.
template <DynamicalSystem X, DynamicalSystem Y>
std::vector<PointOf<Product<X, Y>>> ball_ring(const Product<X, Y>& sys, const PointOf<Product<X, Y>>& p, double r) {
  std::vector<PointOf<Product<X, Y>>> out;
  for (auto& a : ball_ring(sys.left(), p.left, r)) out.push_back({std::move(a), p.right});
  for (auto& b : ball_ring(sys.right(), p.right, r)) out.push_back({p.left, std::move(b)});
  return out;
}

inline std::string ring_scheme(std::string_view kind) {
  if (kind == "cat") return "32 directions on the max-norm square";
  if (kind == "ns" || kind == "rotation") return "arc endpoints";
  if (kind == "shift") return "symbol changes at coordinates -m and m";
  if (kind == "cube") return "coordinates -m and m set to 0 and 1";
  return "factor rings crossed with the other factor's center";
}

/// Lower estimate of the sensitivity constant from ball rings.
struct SensitivityEstimate {
  double eps_lower = 0.0;
  std::int64_t samples = 0;
  std::vector<double> radii;
  std::int64_t horizon = 0;
  /// Per sample: max over radii and n <= horizon of the ring-image diameter.
  std::vector<double> per_sample;
  /// Per radius: min over samples of the max over n.
  std::vector<double> per_radius;
  std::string scheme;

  Json to_json() const {
    return {{"eps_lower", eps_lower}, {"samples", samples},       {"radii", radii},  {"horizon", horizon},
            {"per_sample", per_sample}, {"per_radius", per_radius}, {"scheme", scheme}};
  }
};

namespace detail {

template <DynamicalSystem S>
double pairwise_diameter(const S& sys, const std::vector<PointOf<S>>& pts) {
  double d = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) d = std::max(d, sys.dist(pts[i], pts[j]));
  return d;
}

template <DynamicalSystem S>
std::vector<PointOf<S>> default_bases(const S& sys, std::int64_t count, std::uint64_t seed) {
  std::vector<PointOf<S>> out;
  for (std::int64_t i = 0; i < count; ++i) {
    Rng rng(seed, streams::kSampling, static_cast<std::uint64_t>(i));
    out.push_back(sys.sample(rng));
  }
  return out;
}

}  // namespace detail

/// For each base x and radius r, the largest diameter of f^n({x} u ring(x, r))
/// over 0 <= n <= horizon; eps_lower is the min over bases of the max over
/// radii.
template <DynamicalSystem S>
SensitivityEstimate sensitivity_lower_bound(const S& sys, const std::vector<PointOf<S>>& bases, const std::vector<double>& radii,
                                            std::int64_t horizon, int threads = 0) {
  if (radii.empty()) throw std::invalid_argument("sensitivity_lower_bound: radius list is empty");
  if (bases.empty()) throw std::invalid_argument("sensitivity_lower_bound: no sample points");
  if (horizon < 0) throw std::invalid_argument("sensitivity_lower_bound: horizon must be non-negative");
  for (double r : radii)
    if (!(r > 0)) throw std::invalid_argument("sensitivity_lower_bound: radii must be positive");
  const std::size_t nb = bases.size(), nr = radii.size();
  std::vector<double> growth(nb * nr, 0.0);
  parallel_for(nb * nr, threads, [&](std::size_t idx) {
    const auto& x = bases[idx / nr];
    std::vector<PointOf<S>> pts = ball_ring(sys, x, radii[idx % nr]);
    pts.insert(pts.begin(), x);
    double worst = 0.0;
    for (std::int64_t n = 0; n <= horizon; ++n) {
      worst = std::max(worst, detail::pairwise_diameter(sys, pts));
      if (n < horizon)
        for (auto& p : pts) p = sys.apply(p);
    }
    growth[idx] = worst;
  });
  SensitivityEstimate e;
  e.samples = static_cast<std::int64_t>(nb);
  e.radii = radii;
  e.horizon = horizon;
  e.scheme = ring_scheme(S::kind);
  e.per_sample.assign(nb, 0.0);
  e.per_radius.assign(nr, kNoBound);
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = 0; j < nr; ++j) {
      e.per_sample[i] = std::max(e.per_sample[i], growth[i * nr + j]);
      e.per_radius[j] = std::min(e.per_radius[j], growth[i * nr + j]);
    }
  e.eps_lower = *std::min_element(e.per_sample.begin(), e.per_sample.end());
  return e;
}

template <DynamicalSystem S>
SensitivityEstimate sensitivity_lower_bound(const S& sys, std::int64_t sample_count, const std::vector<double>& radii,
                                            std::int64_t horizon, std::uint64_t seed, int threads = 0) {
  if (sample_count < 1) throw std::invalid_argument("sensitivity_lower_bound: sample count must be positive");
  return sensitivity_lower_bound(sys, detail::default_bases(sys, sample_count, seed), radii, horizon, threads);
}

/// Tries delta = eps/2^j down to `delta_floor`; a pair separates when
/// d(f^n x, f^n y) > eps for some n <= horizon. Pairs are each base with its
/// ring and with seeded points of its delta-ball.
template <DynamicalSystem S>
Certificate equicontinuity_probe(const S& sys, double eps, std::int64_t horizon, const std::vector<PointOf<S>>& bases,
                                 std::uint64_t seed, double delta_floor = 1e-6, int threads = 0) {
  if (!(eps > 0)) throw std::invalid_argument("equicontinuity_probe: eps must be positive");
  if (horizon < 0) throw std::invalid_argument("equicontinuity_probe: horizon must be non-negative");
  if (bases.empty()) throw std::invalid_argument("equicontinuity_probe: no sample points");
  constexpr int kBallSamples = 4;
  Certificate c;
  c.kind = "equicontinuity";
  c.bound = eps;
  c.horizon = horizon;
  Json ladder = Json::array();
  int j = 0;
  for (double delta = eps; delta >= delta_floor; delta = std::ldexp(eps, -++j)) {
    std::vector<double> worst(bases.size(), 0.0);
    std::vector<std::int64_t> when(bases.size(), -1);
    parallel_for(bases.size(), threads, [&](std::size_t i) {
      const auto& x = bases[i];
      std::vector<PointOf<S>> ys = ball_ring(sys, x, delta);
      Rng rng(derive_seed(seed, streams::kSampling, static_cast<std::uint64_t>(j)), streams::kWitness, i);
      for (int s = 0; s < kBallSamples; ++s) ys.push_back(sys.sample_near(x, delta, rng));
      PointOf<S> fx = x;
      for (std::int64_t n = 0; n <= horizon; ++n) {
        for (auto& y : ys) {
          const double d = sys.dist(fx, y);
          if (d > worst[i]) worst[i] = d;
          if (d > eps && when[i] < 0) when[i] = n;
          if (n < horizon) y = sys.apply(y);
        }
        if (n < horizon) fx = sys.apply(fx);
      }
    });
    const auto separated = std::count_if(when.begin(), when.end(), [](std::int64_t n) { return n >= 0; });
    const double w = *std::max_element(worst.begin(), worst.end());
    ladder.push_back({{"delta", delta}, {"separated_bases", separated}, {"worst_distance", w}});
    if (separated == 0) {
      c.pass = true;
      c.worst_value = w;
      c.extra = {{"delta", delta}, {"ladder", ladder}, {"bases", bases.size()}, {"pairs_per_base", "ring plus 4 seeded"}};
      return c;
    }
    const auto first = static_cast<std::size_t>(std::distance(when.begin(), std::find_if(when.begin(), when.end(), [](std::int64_t n) { return n >= 0; })));
    c.worst_index = when[first];
    c.worst_value = w;
  }
  c.pass = false;
  c.extra = {{"delta", nullptr}, {"delta_floor", delta_floor}, {"ladder", ladder}, {"bases", bases.size()}, {"reason", "separation at every tested delta"}};
  return c;
}

template <DynamicalSystem S>
Certificate equicontinuity_probe(const S& sys, double eps, std::int64_t horizon, std::int64_t sample_count, std::uint64_t seed,
                                 double delta_floor = 1e-6, int threads = 0) {
  return equicontinuity_probe(sys, eps, horizon, detail::default_bases(sys, sample_count, seed), seed, delta_floor, threads);
}

/// A parametrized connected family, discretized at `parameter_step`, whose
/// orbits are claimed to stay within eps of the orbit of `center`.
template <class P>
struct ContinuumWitness {
  P center;
  std::vector<P> members;  // in parameter order
  double parameter_step = 1e-3;
  std::string construction;
  double eps = 0.0;
  std::int64_t horizon = 0;
  Json params = Json::object();
};

/// Path through C_x = prod([x_i - eps, x_i + eps] n [0,1]) from one corner to
/// the opposite one: coordinates |i| <= span alternate direction, tails move
/// together. Offsets are nudged toward x until |y_i - x_i| <= eps in floating
/// point.
ContinuumWitness<CubeSeq> cube_box_witness(const CubeSeq& x, double eps, std::int64_t horizon, std::int64_t span = 8,
                                           double parameter_step = 1e-3);

/// Arc of `length` centered at `mid`.
std::vector<CirclePoint> circle_arc(double mid, double length, double parameter_step);

/// Segment {x + s*dir : |s| <= length/2}.
ContinuumWitness<TorusPoint> torus_segment_witness(const TorusPoint& x, std::array<double, 2> dir, double length, double eps,
                                                   std::int64_t horizon, double parameter_step = 1e-3);

/// {x} x arc.
template <class P>
ContinuumWitness<ProductPoint<P, CirclePoint>> product_arc_witness(const P& x, double mid, double length, double eps, std::int64_t horizon,
                                                                   double parameter_step = 1e-3) {
  ContinuumWitness<ProductPoint<P, CirclePoint>> w;
  w.center = {x, {wrap01(mid)}};
  for (const auto& q : circle_arc(mid, length, parameter_step)) w.members.push_back({x, q});
  w.parameter_step = parameter_step;
  w.construction = "point_times_arc";
  w.eps = eps;
  w.horizon = horizon;
  w.params = {{"arc_center", mid}, {"arc_length", length}};
  return w;
}

namespace detail {

template <class P>
bool in_space(const P&) {
  return true;
}
inline bool in_space(const CubeSeq& p) {
  auto ok = [](double v) { return v >= 0.0 && v <= 1.0; };
  return std::ranges::all_of(p.window(), ok) && std::ranges::all_of(p.left_tail(), ok) && std::ranges::all_of(p.right_tail(), ok);
}
inline bool in_space(const CirclePoint& p) { return p.t >= 0.0 && p.t < 1.0; }
template <class L, class R>
bool in_space(const ProductPoint<L, R>& p) {
  return in_space(p.left) && in_space(p.right);
}

/// sup_i |y_{i+n} - x_{i+n}| 2^{-|i|} evaluated from the offset profile.
double cube_closed_form(const CubeSeq& x, const CubeSeq& y, std::int64_t n);

}  // namespace detail

/// Checks sup_{|n| <= horizon} max_member d(f^n(member), f^n(center)) <= eps
/// and records the sampled diameter of f^n(family) over at most 128
/// members. For the cube shift the distance is also recomputed from the
/// closed-form sup formula and must agree exactly.
template <DynamicalSystem S>
Certificate cw_witness_check(const S& sys, const ContinuumWitness<PointOf<S>>& w, int threads = 0) {
  using P = PointOf<S>;
  if (w.members.size() < 2) throw std::invalid_argument("cw_witness_check: family needs at least two members");
  if (w.horizon < 0) throw std::invalid_argument("cw_witness_check: horizon must be non-negative");
  if (!detail::in_space(w.center)) throw std::invalid_argument("cw_witness_check: center leaves the space");
  for (std::size_t i = 0; i < w.members.size(); ++i)
    if (!detail::in_space(w.members[i]))
      throw std::invalid_argument("cw_witness_check: member " + std::to_string(i) + " leaves the space (clamping violation)");

  const std::int64_t H = w.horizon;
  const std::size_t span = static_cast<std::size_t>(2 * H + 1);
  auto orbit_of = [&](const P& p) {
    std::vector<P> o(span, p);
    for (std::int64_t n = 1; n <= H; ++n) {
      o[static_cast<std::size_t>(H + n)] = sys.apply(o[static_cast<std::size_t>(H + n - 1)]);
      o[static_cast<std::size_t>(H - n)] = sys.inverse(o[static_cast<std::size_t>(H - n + 1)]);
    }
    return o;
  };
  const std::vector<P> center = orbit_of(w.center);
  constexpr std::size_t kDiameterMembers = 128;
  const std::size_t stride = std::max<std::size_t>(1, (w.members.size() + kDiameterMembers - 1) / kDiameterMembers);

  const std::size_t m = w.members.size();
  std::vector<std::vector<double>> radius(m);
  std::vector<std::vector<P>> kept(m);
  std::vector<char> mismatch(m, 0);
  std::vector<double> closed_max(m, 0.0);
  parallel_for(m, threads, [&](std::size_t i) {
    auto o = orbit_of(w.members[i]);
    radius[i].resize(span);
    for (std::size_t k = 0; k < span; ++k) {
      radius[i][k] = sys.dist(o[k], center[k]);
      if constexpr (std::is_same_v<S, CubeShift>) {
        const double cf = detail::cube_closed_form(w.center, w.members[i], (static_cast<std::int64_t>(k) - H) * sys.direction());
        closed_max[i] = std::max(closed_max[i], cf);
        if (cf != radius[i][k]) mismatch[i] = 1;
      }
    }
    if (i % stride == 0 || i + 1 == m) kept[i] = std::move(o);
  });

  std::vector<double> rad(span, 0.0), diam(span, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < span; ++k) rad[k] = std::max(rad[k], radius[i][k]);
  std::vector<std::size_t> sub;
  for (std::size_t i = 0; i < m; ++i)
    if (!kept[i].empty()) sub.push_back(i);
  parallel_for(span, threads, [&](std::size_t k) {
    double d = 0.0;
    for (std::size_t a = 0; a < sub.size(); ++a)
      for (std::size_t b = a + 1; b < sub.size(); ++b) d = std::max(d, sys.dist(kept[sub[a]][k], kept[sub[b]][k]));
    diam[k] = d;
  });

  const auto worst = static_cast<std::size_t>(std::distance(rad.begin(), std::max_element(rad.begin(), rad.end())));
  std::optional<std::int64_t> first_violation;
  for (std::int64_t a = 0; a <= H && !first_violation; ++a)
    for (std::int64_t n : {a, -a})
      if (rad[static_cast<std::size_t>(H + n)] > w.eps) {
        first_violation = n;
        break;
      }

  Certificate c;
  c.kind = "cw_witness";
  c.bound = w.eps;
  c.horizon = H;
  c.worst_index = static_cast<std::int64_t>(worst) - H;
  c.worst_value = rad[worst];
  c.pass = !first_violation.has_value();
  c.extra = {{"construction", w.construction},
             {"members", m},
             {"parameter_step", w.parameter_step},
             {"params", w.params},
             {"measure", "max distance of member orbits to the center orbit"},
             {"sampled_diameter_max", *std::max_element(diam.begin(), diam.end())},
             {"diameter_members", sub.size()},
             {"first_violation", first_violation ? Json(*first_violation) : Json(nullptr)}};
  if constexpr (std::is_same_v<S, CubeShift>) {
    const double cf = *std::max_element(closed_max.begin(), closed_max.end());
    const bool agree = std::ranges::none_of(mismatch, [](char b) { return b != 0; });
    c.extra["closed_form"] = {{"max", cf}, {"agrees_exactly", agree}, {"slack", w.eps - cf}, {"within_eps", cf <= w.eps}};
    c.pass = c.pass && agree && cf <= w.eps;
  }
  return c;
}

/// Precondition: the inverse system is sensitive beyond eps on 32 sampled
/// points at radius 1e-3. Then builds 2^k points of W^s_eps(x) by running the
/// Cantor construction in the stable direction.
template <DynamicalSystem S>
CantorApprox<S> countable_expansivity_refuter(const S& sys, const PointOf<S>& x, double eps, int k, std::int64_t horizon,
                                              std::uint64_t seed, int threads = 0) {
  constexpr std::int64_t kSamples = 32;
  constexpr double kRadius = 1e-3;
  const auto est = sensitivity_lower_bound(sys.inverse_system(), kSamples, {kRadius}, horizon, seed, threads);
  if (!(est.eps_lower > eps)) {
    Certificate c;
    c.kind = "refuter_precondition";
    c.bound = eps;
    c.horizon = horizon;
    const auto at = std::min_element(est.per_sample.begin(), est.per_sample.end());
    c.worst_index = std::distance(est.per_sample.begin(), at);
    c.worst_value = est.eps_lower;
    c.extra = {{"reason", "inverse not sensitive at eps"}, {"inverse_sensitivity", est.to_json()}};
    throw DynamicsError("countable_expansivity_refuter: inverse system not sensitive at eps", c);
  }
  return build(sys, x, eps, k, horizon, seed, Direction::STABLE, threads);
}

}  // namespace shadowdyn
