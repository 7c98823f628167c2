#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "shadowdyn/certificate.hpp"
#include "shadowdyn/parallel.hpp"
#include "shadowdyn/pseudo_orbit.hpp"
#include "shadowdyn/serialize.hpp"
#include "shadowdyn/shadowing.hpp"

namespace shadowdyn {

enum class Direction { UNSTABLE, STABLE };

inline std::string to_string(Direction d) { return d == Direction::UNSTABLE ? "unstable" : "stable"; }

// Largest eps at which each witness strategy is guaranteed to separate.
inline double sensitivity_bound(const ToralAutomorphism&) { return 0.25; }
inline double sensitivity_bound(const FullShift&) { return 0.5; }
inline double sensitivity_bound(const CubeShift&) { return 0.45; }
inline double sensitivity_bound(const NorthSouth&) { return 0.5; }
inline double sensitivity_bound(const CircleRotation&) { return 0.5; }
template <class X, class Y>
double sensitivity_bound(const Product<X, Y>& p) {
  return std::max(sensitivity_bound(p.left()), sensitivity_bound(p.right()));
}

template <class P>
struct Witness {
  P point;
  std::int64_t time = 0;  // first n with d(f^n y, f^n point) > eps
  double separation = 0.0;
  std::string strategy;
};

namespace detail {

/// First n in [0, horizon] with d(f^n a, f^n b) > eps, and the largest distance seen.
template <DynamicalSystem S>
std::pair<std::optional<std::int64_t>, double> first_separation(const S& sys, PointOf<S> a, PointOf<S> b, double eps,
                                                               std::int64_t horizon) {
  double seen = 0.0;
  for (std::int64_t n = 0; n <= horizon; ++n) {
    const double d = sys.dist(a, b);
    seen = std::max(seen, d);
    if (d > eps) return {n, d};
    if (n < horizon) {
      a = sys.apply(a);
      b = sys.apply(b);
    }
  }
  return {std::nullopt, seen};
}

template <DynamicalSystem S>
std::optional<Witness<PointOf<S>>> try_candidate(const S& sys, const PointOf<S>& y, const PointOf<S>& cand, double delta, double eps,
                                                 std::int64_t horizon, const char* strategy, double& seen) {
  if (!(sys.dist(y, cand) < delta)) return std::nullopt;
  const auto [n, d] = first_separation(sys, y, cand, eps, horizon);
  seen = std::max(seen, d);
  if (!n) return std::nullopt;
  return Witness<PointOf<S>>{cand, *n, d, strategy};
}

[[noreturn]] inline void witness_failure(std::string_view system, double delta, double eps, std::int64_t horizon, double seen,
                                         const std::string& strategy) {
  Certificate c;
  c.kind = "sensitivity_witness";
  c.bound = eps;
  c.horizon = horizon;
  c.worst_value = seen;
  c.extra = {{"system", std::string(system)},
             {"delta", delta},
             {"strategy", strategy},
             {"reason", "horizon_exhausted"},
             {"diagnosis", seen > 0.5 * eps ? "insufficient_horizon" : "not_sensitive_at_eps"}};
  throw DynamicsError("sensitivity_witness: no separation within the horizon", c);
}

template <DynamicalSystem S>
std::optional<Witness<PointOf<S>>> seeded_fallback(const S& sys, const PointOf<S>& y, double delta, double eps, std::int64_t horizon,
                                                   std::uint64_t seed, double& seen) {
  Rng rng(seed, streams::kWitness);
  for (int t = 0; t < 64; ++t) {
    if (auto w = try_candidate(sys, y, sys.sample_near(y, delta, rng), delta, eps, horizon, "seeded_fallback", seen)) return w;
  }
  return std::nullopt;
}

inline void check_witness_args(double delta, double eps, double bound, std::int64_t horizon) {
  if (!(delta > 0)) throw std::invalid_argument("sensitivity_witness: delta must be positive");
  if (!(eps > 0 && eps <= bound)) throw std::invalid_argument("sensitivity_witness: eps outside the certified sensitivity range");
  if (horizon < 1) throw std::invalid_argument("sensitivity_witness: horizon must be at least 1");
}

template <class Sys>
Witness<PointOf<Sys>> circle_scan_witness(const Sys& sys, const CirclePoint& y, double delta, double eps, std::int64_t horizon) {
  check_witness_args(delta, eps, sensitivity_bound(sys), horizon);
  double seen = 0.0;
  for (int j = 1; j < 100; ++j) {
    for (double sgn : {1.0, -1.0}) {
      const CirclePoint cand{wrap01(y.t + sgn * j * delta / 100.0)};
      if (auto w = try_candidate(sys, y, cand, delta, eps, horizon, "ball_scan", seen)) return *w;
    }
  }
  witness_failure(Sys::kind, delta, eps, horizon, seen, "ball_scan");
}

}  // namespace detail

/// y1 with d(y, y1) < delta whose orbit separates from y's by more than eps
/// within the horizon.
inline Witness<TorusPoint> sensitivity_witness(const ToralAutomorphism& sys, const TorusPoint& y, double delta, double eps,
                                               std::int64_t horizon, std::uint64_t seed) {
  detail::check_witness_args(delta, eps, sensitivity_bound(sys), horizon);
  double seen = 0.0;
  const TorusPoint cand = torus_displace(y, sys.splitting().e_u, delta / 2.0);
  if (auto w = detail::try_candidate(sys, y, cand, delta, eps, horizon, "unstable_displacement", seen)) return *w;
  if (auto w = detail::seeded_fallback(sys, y, delta, eps, horizon, seed, seen)) return *w;
  detail::witness_failure(ToralAutomorphism::kind, delta, eps, horizon, seen, "unstable_displacement");
}

inline Witness<SymbolSeq> sensitivity_witness(const FullShift& sys, const SymbolSeq& y, double delta, double eps, std::int64_t horizon,
                                              std::uint64_t seed) {
  detail::check_witness_args(delta, eps, sensitivity_bound(sys), horizon);
  double seen = 0.0;
  const int m = first_free_coordinate(delta);
  const std::int64_t i = static_cast<std::int64_t>(m) * sys.direction();
  const auto flipped = static_cast<std::uint8_t>((y.at(i) + 1) % sys.alphabet());
  if (auto w = detail::try_candidate(sys, y, y.with(i, flipped), delta, eps, horizon, "flip_coordinate", seen)) return *w;
  if (auto w = detail::seeded_fallback(sys, y, delta, eps, horizon, seed, seen)) return *w;
  detail::witness_failure(FullShift::kind, delta, eps, horizon, seen, "flip_coordinate");
}

inline Witness<CubeSeq> sensitivity_witness(const CubeShift& sys, const CubeSeq& y, double delta, double eps, std::int64_t horizon,
                                            std::uint64_t seed) {
  detail::check_witness_args(delta, eps, sensitivity_bound(sys), horizon);
  double seen = 0.0;
  const int m = first_free_coordinate(delta);
  const std::int64_t i = static_cast<std::int64_t>(m) * sys.direction();
  const double far = y.at(i) < 0.5 ? 1.0 : 0.0;
  if (auto w = detail::try_candidate(sys, y, y.with(i, far), delta, eps, horizon, "far_endpoint", seen)) return *w;
  if (auto w = detail::seeded_fallback(sys, y, delta, eps, horizon, seed, seen)) return *w;
  detail::witness_failure(CubeShift::kind, delta, eps, horizon, seen, "far_endpoint");
}

inline Witness<CirclePoint> sensitivity_witness(const NorthSouth& sys, const CirclePoint& y, double delta, double eps,
                                                std::int64_t horizon, std::uint64_t) {
  return detail::circle_scan_witness(sys, y, delta, eps, horizon);
}

inline Witness<CirclePoint> sensitivity_witness(const CircleRotation& sys, const CirclePoint& y, double delta, double eps,
                                                std::int64_t horizon, std::uint64_t) {
  return detail::circle_scan_witness(sys, y, delta, eps, horizon);
}

/// Witness in the left factor, else in the right one.
template <DynamicalSystem X, DynamicalSystem Y>
Witness<ProductPoint<PointOf<X>, PointOf<Y>>> sensitivity_witness(const Product<X, Y>& sys, const ProductPoint<PointOf<X>, PointOf<Y>>& y,
                                                                  double delta, double eps, std::int64_t horizon, std::uint64_t seed) {
  detail::check_witness_args(delta, eps, sensitivity_bound(sys), horizon);
  std::optional<DynamicsError> first;
  if (eps <= sensitivity_bound(sys.left())) {
    try {
      auto w = sensitivity_witness(sys.left(), y.left, delta, eps, horizon, seed);
      return {{w.point, y.right}, w.time, w.separation, "left_" + w.strategy};
    } catch (const DynamicsError& e) {
      first = e;
    }
  }
  if (eps <= sensitivity_bound(sys.right())) {
    try {
      auto w = sensitivity_witness(sys.right(), y.right, delta, eps, horizon, seed);
      return {{y.left, w.point}, w.time, w.separation, "right_" + w.strategy};
    } catch (const DynamicsError& e) {
      if (!first) first = e;
    }
  }
  if (first) throw *first;
  detail::witness_failure(Product<X, Y>::kind, delta, eps, horizon, 0.0, "factor_witness");
}

/// Tolerances of the iteration: level k is refined with shadowing bound
/// eps_k and pseudo-orbit bound delta_k.
struct EpsSchedule {
  double eps = 0.0;
  std::vector<double> eps_k;
  std::vector<double> delta_k;
  std::vector<Json> moduli;

  Json to_json() const { return {{"eps", eps}, {"eps_k", eps_k}, {"delta_k", delta_k}, {"moduli", moduli}}; }
};

/// Verification record for one point added by refinement.
struct RefinementRecord {
  std::int64_t witness_time = 0;
  double witness_separation = 0.0;
  double witness_distance = 0.0;
  double shadow_eps = 0.0;
  double backward_deviation = 0.0;  // max_{0<=n<=H} d(f^-n c, f^-n y)
  double forward_deviation = 0.0;   // max_{0<=n<=H} d(f^n c, f^n y1)
  double escape_separation = 0.0;   // d(f^n c, f^n y) at the witness time
  double spacing = 0.0;             // d(c, y)
  std::string strategy;

  Json to_json() const {
    return {{"witness_time", witness_time},     {"witness_separation", witness_separation}, {"witness_distance", witness_distance},
            {"shadow_eps", shadow_eps},         {"backward_deviation", backward_deviation}, {"forward_deviation", forward_deviation},
            {"escape_separation", escape_separation}, {"spacing", spacing},                 {"strategy", strategy}};
  }
};

/// Finite levels C_0 subset C_1 subset ... of the perfect set. Points are
/// stored flat: level k is the first 2^k entries, and point i >= 1 was
/// created from parent[i] at level level_of[i]. For STABLE the engine runs
/// on the inverse system, so "backward" below means forward in f.
template <DynamicalSystem S>
struct CantorApprox {
  using Point = PointOf<S>;
  S system;  // the engine system (f, or f^-1 for STABLE)
  Direction direction = Direction::UNSTABLE;
  Point base;
  double eps = 0.0;
  std::int64_t horizon = 0;
  std::uint64_t seed = 0;
  std::vector<Point> points;
  std::vector<std::int64_t> parent;
  std::vector<int> level_of;
  std::vector<RefinementRecord> records;  // records[i] for i >= 1; records[0] is empty
  std::vector<double> min_gap;            // per level; infinity at level 0
  EpsSchedule schedule;
  Certificate membership;

  int levels() const { return static_cast<int>(std::countr_zero(points.size())); }
  std::size_t level_size(int k) const { return std::size_t{1} << k; }
};

template <DynamicalSystem S>
struct TailInfo {
  std::string kind = "window_only";
  std::int64_t extend_to = 0;  // checks must run to this horizon for exactness
  double bound = -1.0;
  Json details = Json::object();
};

template <DynamicalSystem S>
TailInfo<S> tail_info(const S&, const PointOf<S>&, const PointOf<S>&, double, std::int64_t) {
  return {};
}

template <class T>
std::int64_t sequence_exact_horizon(const Sequence<T>& a, const Sequence<T>& b) {
  // Past the windows the differences of both orbits recur with the joint
  // tail period, so one extra period decides every later time.
  const std::int64_t span = std::max({std::abs(a.lo()), std::abs(a.hi()), std::abs(b.lo()), std::abs(b.hi())});
  const auto period = static_cast<std::int64_t>(std::lcm(std::lcm(a.left_tail().size(), b.left_tail().size()),
                                                         std::lcm(a.right_tail().size(), b.right_tail().size())));
  return span + 2 * period + 2;
}

inline TailInfo<FullShift> tail_info(const FullShift&, const SymbolSeq& base, const SymbolSeq& p, double, std::int64_t) {
  return {"exact", sequence_exact_horizon(base, p), 0.0, Json::object()};
}
inline TailInfo<CubeShift> tail_info(const CubeShift&, const CubeSeq& base, const CubeSeq& p, double, std::int64_t) {
  return {"exact", sequence_exact_horizon(base, p), 0.0, Json::object()};
}

/// After n > H backward steps the deviation is a*lambda_u^-n e_u + b*lambda_s^-n e_s.
inline TailInfo<ToralAutomorphism> tail_info(const ToralAutomorphism& sys, const TorusPoint& base, const TorusPoint& p, double eps,
                                             std::int64_t h) {
  const auto [a, b] = eigen_coordinates(sys, p, base);
  const double lu = std::fabs(sys.splitting().lambda_u);
  const double growth = 1.0 / std::fabs(sys.splitting().lambda_s);
  TailInfo<ToralAutomorphism> t;
  t.kind = "analytic";
  t.bound = std::fabs(a) * std::pow(lu, -static_cast<double>(h));
  // Horizon up to which the stable residual keeps the deviation below eps.
  double horizon_ok = std::numeric_limits<double>::infinity();
  if (std::fabs(a) >= eps) horizon_ok = 0.0;
  else if (b != 0.0) horizon_ok = std::max(0.0, std::floor(std::log((eps - std::fabs(a)) / std::fabs(b)) / std::log(growth)));
  t.details = {{"unstable_coordinate", a},
               {"stable_residual", b},
               {"analytic_horizon", std::isfinite(horizon_ok) ? Json(horizon_ok) : Json("unbounded")}};
  return t;
}

template <DynamicalSystem X, DynamicalSystem Y>
TailInfo<Product<X, Y>> tail_info(const Product<X, Y>& sys, const PointOf<Product<X, Y>>& base, const PointOf<Product<X, Y>>& p, double eps,
                                  std::int64_t h) {
  const auto l = tail_info(sys.left(), base.left, p.left, eps, h);
  const auto r = tail_info(sys.right(), base.right, p.right, eps, h);
  TailInfo<Product<X, Y>> t;
  t.kind = l.kind + "/" + r.kind;
  t.extend_to = std::max(l.extend_to, r.extend_to);
  t.bound = (l.bound < 0 || r.bound < 0) ? -1.0 : std::max(l.bound, r.bound);
  t.details = {{"left", l.details}, {"right", r.details}};
  return t;
}

/// Checks d(g^-n p, g^-n base) <= eps for every point p and 0 <= n <= horizon
/// (g the engine system), extended to the exact horizon for symbolic systems.
template <DynamicalSystem S>
Certificate verify_membership(const CantorApprox<S>& c, std::int64_t horizon) {
  const auto& g = c.system;
  Certificate cert;
  cert.kind = "membership";
  cert.bound = c.eps;
  cert.horizon = horizon;
  std::int64_t worst_time = 0;
  std::int64_t checked_to = horizon;
  double tail_bound = 0.0;
  bool tail_known = true;
  std::string tail_kind;
  Json tails = Json::array();
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    const auto t = tail_info(g, c.base, c.points[i], c.eps, horizon);
    const std::int64_t h = std::max(horizon, t.extend_to);
    checked_to = std::max(checked_to, h);
    PointOf<S> p = c.points[i];
    PointOf<S> x = c.base;
    for (std::int64_t n = 0; n <= h; ++n) {
      const double d = g.dist(p, x);
      if (d > cert.worst_value) {
        cert.worst_value = d;
        cert.worst_index = static_cast<std::int64_t>(i);
        worst_time = n;
      }
      if (n < h) {
        p = g.inverse(p);
        x = g.inverse(x);
      }
    }
    tail_kind = t.kind;
    if (t.bound < 0) tail_known = false;
    else tail_bound = std::max(tail_bound, t.bound);
    if (!t.details.empty()) tails.push_back(t.details);
  }
  cert.pass = cert.worst_value <= c.eps;
  cert.extra = {{"direction", to_string(c.direction)},
                {"points", c.points.size()},
                {"worst_time", worst_time},
                {"checked_to", checked_to},
                {"tail", tail_kind},
                {"tail_bound", tail_known ? Json(tail_bound) : Json(nullptr)}};
  if (!tails.empty()) cert.extra["tail_details"] = tails;
  return cert;
}

namespace detail {

template <DynamicalSystem S>
[[noreturn]] void refine_failure(const std::string& what, const std::string& check, int level, std::size_t index, double bound, double value,
                                 std::int64_t horizon) {
  Certificate c;
  c.kind = "cantor_refine";
  c.bound = bound;
  c.horizon = horizon;
  c.worst_index = static_cast<std::int64_t>(index);
  c.worst_value = value;
  c.extra = {{"check", check}, {"level", level}, {"system", std::string(S::kind)}};
  throw DynamicsError(what, c);
}

template <DynamicalSystem S>
double max_deviation(const S& sys, PointOf<S> a, PointOf<S> b, std::int64_t horizon, bool backward) {
  double worst = 0.0;
  for (std::int64_t n = 0; n <= horizon; ++n) {
    worst = std::max(worst, sys.dist(a, b));
    if (n < horizon) {
      a = backward ? sys.inverse(a) : sys.apply(a);
      b = backward ? sys.inverse(b) : sys.apply(b);
    }
  }
  return worst;
}

}  // namespace detail

/// Adds c(y) for every y of the top level: splice the past of y with the
/// future of a witness y1, shadow at eps_k, and verify closeness, escape,
/// spacing and separation.
template <DynamicalSystem S>
void refine(CantorApprox<S>& c, int threads = 0) {
  const int k = c.levels();
  const std::size_t n = c.level_size(k);
  if (c.points.size() != n) throw std::logic_error("refine: inconsistent level sizes");
  const double gap = c.min_gap.back();
  const double eps_k = k == 0 ? c.eps / 2.0 : 0.9 * std::min(std::ldexp(c.eps, -(k + 1)), gap / 2.0);
  const ShadowingModulus mod = modulus(c.system, std::min(eps_k, c.system.diameter_bound()), c.seed);
  const double delta_k = mod.delta;
  c.schedule.eps_k.push_back(eps_k);
  c.schedule.delta_k.push_back(delta_k);
  c.schedule.moduli.push_back(mod.to_json());
  const double spacing_bound = std::ldexp(c.eps, -(k + 1));
  const std::int64_t h = c.horizon;

  std::vector<PointOf<S>> fresh(n);
  std::vector<RefinementRecord> recs(n);
  parallel_for(n, threads, [&](std::size_t i) {
    const auto& sys = c.system;
    const PointOf<S>& y = c.points[i];
    const auto w = sensitivity_witness(sys, y, delta_k, c.eps, h, derive_seed(c.seed, static_cast<std::uint64_t>(k), i));
    const auto po = splice(sys, y, w.point, h, h);
    const auto sr = shadow(po, eps_k);
    const PointOf<S>& z = sr.point;
    RefinementRecord r;
    r.witness_time = w.time;
    r.witness_separation = w.separation;
    r.witness_distance = sys.dist(y, w.point);
    r.strategy = w.strategy;
    r.shadow_eps = sr.achieved_eps;
    r.backward_deviation = detail::max_deviation(sys, z, y, h, true);
    r.forward_deviation = detail::max_deviation(sys, z, w.point, h, false);
    r.escape_separation = sys.dist(iterate(sys, z, w.time), iterate(sys, y, w.time));
    r.spacing = sys.dist(z, y);
    if (!(r.backward_deviation <= eps_k))
      detail::refine_failure<S>("refine: shadow leaves the local unstable set of its parent", "backward", k + 1, i, eps_k,
                                r.backward_deviation, h);
    if (!(r.forward_deviation <= eps_k))
      detail::refine_failure<S>("refine: shadow does not follow the witness", "forward", k + 1, i, eps_k, r.forward_deviation, h);
    if (!(r.spacing < spacing_bound))
      detail::refine_failure<S>("refine: new point too far from its parent", "spacing", k + 1, i, spacing_bound, r.spacing, h);
    if (!(r.escape_separation > 0.0))
      detail::refine_failure<S>("refine: new point coincides with its parent", "escape", k + 1, i, 0.0, r.escape_separation, h);
    fresh[i] = z;
    recs[i] = std::move(r);
  });

  // Separation: pairs other than (c(y), y) keep at least gap - 2 eps_k.
  const double guaranteed = std::isfinite(gap) ? gap - 2.0 * eps_k : 0.0;
  double new_gap = gap;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n + i; ++j) {
      const auto& other = j < n ? c.points[j] : fresh[j - n];
      const double d = c.system.dist(fresh[i], other);
      const bool parent_child = j == i;
      if (!(d > 0.0) || (!parent_child && std::isfinite(gap) && !(d >= guaranteed)))
        detail::refine_failure<S>("refine: separation certificate failed", "separation", k + 1, n + i, guaranteed, d, h);
      new_gap = std::min(new_gap, d);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    c.points.push_back(std::move(fresh[i]));
    c.parent.push_back(static_cast<std::int64_t>(i));
    c.level_of.push_back(k + 1);
    c.records.push_back(std::move(recs[i]));
  }
  c.min_gap.push_back(new_gap);
}

/// Levels 0..k_max of a perfect subset of W^u_eps(x), or of W^s_eps(x) when
/// direction is STABLE (the engine then runs on the inverse system).
template <DynamicalSystem S>
CantorApprox<S> build(const S& sys, const PointOf<S>& x, double eps, int k_max, std::int64_t horizon, std::uint64_t seed,
                      Direction direction = Direction::UNSTABLE, int threads = 0) {
  if (k_max < 0 || k_max > 20) throw std::invalid_argument("build: k_max must lie in [0, 20]");
  if (horizon < 1) throw std::invalid_argument("build: horizon must be at least 1");
  CantorApprox<S> c;
  c.system = direction == Direction::STABLE ? sys.inverse_system() : sys;
  if (!(eps > 0 && eps <= sensitivity_bound(c.system))) throw std::invalid_argument("build: eps outside the certified sensitivity range");
  c.direction = direction;
  c.base = x;
  c.eps = eps;
  c.horizon = horizon;
  c.seed = seed;
  c.points = {x};
  c.parent = {-1};
  c.level_of = {0};
  c.records = {RefinementRecord{}};
  c.min_gap = {std::numeric_limits<double>::infinity()};
  c.schedule.eps = eps;
  for (int k = 0; k < k_max; ++k) refine(c, threads);
  c.membership = verify_membership(c, horizon);
  return c;
}

template <DynamicalSystem S>
Json cantor_to_json(const CantorApprox<S>& c) {
  Json pts = Json::array();
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    Json p = {{"index", i}, {"level", c.level_of[i]}, {"parent", c.parent[i]}, {"point", point_to_json(c.points[i])}};
    if (i > 0) p["record"] = c.records[i].to_json();
    pts.push_back(std::move(p));
  }
  Json gaps = Json::array();
  for (double g : c.min_gap) gaps.push_back(std::isfinite(g) ? Json(g) : Json(nullptr));
  return {{"system", std::string(S::kind)},
          {"direction", to_string(c.direction)},
          {"eps", c.eps},
          {"levels", c.levels()},
          {"horizon", c.horizon},
          {"seed", c.seed},
          {"base", point_to_json(c.base)},
          {"schedule", c.schedule.to_json()},
          {"min_gap", gaps},
          {"points", pts},
          {"membership", c.membership.to_json()}};
}

/// One row per point: index, level, parent, coordinates.
template <DynamicalSystem S>
std::string cantor_to_csv(const CantorApprox<S>& c) {
  std::vector<std::string> head{"index", "level", "parent"};
  for (auto& h : PointCodec<PointOf<S>>::csv_header()) head.push_back(h);
  std::string out = csv_line(head);
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    std::vector<std::string> row{std::to_string(i), std::to_string(c.level_of[i]), std::to_string(c.parent[i])};
    for (auto& f : PointCodec<PointOf<S>>::csv_fields(c.points[i])) row.push_back(f);
    out += csv_line(row);
  }
  return out;
}

}  // namespace shadowdyn
