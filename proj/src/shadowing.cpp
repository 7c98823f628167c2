#include "shadowdyn/shadowing.hpp"

#include <cmath>

namespace shadowdyn {

namespace {

Certificate precondition_failure(std::string_view system, double defect_value, double limit, std::int64_t window) {
  Certificate c;
  c.kind = "shadowing_precondition";
  c.bound_name = "defect_limit";
  c.bound = limit;
  c.horizon = window;
  c.worst_value = defect_value;
  c.extra = {{"system", std::string(system)}};
  return c;
}

template <DynamicalSystem S>
double window_deviation(const PseudoOrbit<S>& po, const PointOf<S>& z) {
  const auto& sys = po.system();
  double worst = 0.0;
  PointOf<S> y = z;
  for (std::int64_t k = 0; k <= po.hi(); ++k) {
    worst = std::max(worst, sys.dist(y, po[k]));
    if (k < po.hi()) y = sys.apply(y);
  }
  y = z;
  for (std::int64_t k = -1; k >= po.lo(); --k) {
    y = sys.inverse(y);
    worst = std::max(worst, sys.dist(y, po[k]));
  }
  return worst;
}

template <class T>
Sequence<T> read_off_forward(const std::vector<Sequence<T>>& x, std::int64_t lo) {
  const auto hi = lo + static_cast<std::int64_t>(x.size()) - 1;
  // Before lo the orbit is sigma^{i-lo}(x_lo), whose coordinate 0 is x_lo[i-lo].
  const Sequence<T> past = x.front().shifted(-lo);
  const Sequence<T> future = x.back().shifted(-hi);
  const std::int64_t from = std::min(lo, past.lo());
  const std::int64_t to = std::max(hi, future.hi());
  std::vector<T> w;
  w.reserve(static_cast<std::size_t>(to - from + 1));
  for (std::int64_t i = from; i <= to; ++i) {
    if (i < lo) w.push_back(past.at(i));
    else if (i > hi) w.push_back(future.at(i));
    else w.push_back(x[static_cast<std::size_t>(i - lo)].at(0));
  }
  const auto pl = static_cast<std::int64_t>(past.left_tail().size());
  std::vector<T> left(static_cast<std::size_t>(pl));
  for (std::int64_t k = 0; k < pl; ++k) left[static_cast<std::size_t>(pl - 1 - k)] = past.at(from - 1 - k);
  std::vector<T> right(future.right_tail().size());
  for (std::size_t k = 0; k < right.size(); ++k) right[k] = future.at(to + 1 + static_cast<std::int64_t>(k));
  return Sequence<T>(from, std::move(w), std::move(left), std::move(right), x.front().alphabet());
}

template <class Sys>
ShadowResult<PointOf<Sys>> shadow_sequence(const PseudoOrbit<Sys>& po, double eps) {
  using P = PointOf<Sys>;
  const double def = defect(po);
  if (!(def < 0.5)) throw DynamicsError("shadow: defect must be below 1/2", precondition_failure(Sys::kind, def, 0.5, po.hi() - po.lo()));
  ShadowResult<P> r;
  if (po.system().direction() == 1) {
    r.point = read_off_forward(po.points(), po.lo());
  } else {
    // Reflection conjugates the inverse shift to the shift.
    std::vector<P> refl;
    refl.reserve(po.size());
    for (const auto& p : po.points()) refl.push_back(p.reflected());
    r.point = read_off_forward(refl, po.lo()).reflected();
  }
  r.lo = po.lo();
  r.hi = po.hi();
  r.achieved_eps = window_deviation(po, r.point);
  // Beyond the window both orbits are true orbits whose differences sit at
  // coordinates farther from 0 than at the window ends.
  r.tail_bound = 0.0;
  r.details = {{"defect", def}, {"method", "coordinate_read_off"}};
  if (!(r.achieved_eps <= eps)) {
    Certificate c;
    c.kind = "shadowing";
    c.bound = eps;
    c.horizon = po.hi() - po.lo();
    c.worst_value = r.achieved_eps;
    throw DynamicsError("shadow: verified deviation exceeds the requested eps", c);
  }
  return r;
}

template <class Sys>
ShadowResult<CirclePoint> shadow_circle(const PseudoOrbit<Sys>& po, double eps) {
  const CirclePoint x0 = po[0];
  std::size_t evaluations = 0;
  double best = kNoBound;
  double best_t = x0.t;
  auto objective = [&](double t) {
    ++evaluations;
    const double d = window_deviation(po, CirclePoint{wrap01(t)});
    if (d < best) {
      best = d;
      best_t = wrap01(t);
    }
    return d;
  };
  // The candidate set does not depend on eps, so achieved values are
  // comparable across requested bounds.
  constexpr int kScan = 400;
  constexpr double kStep = 1.0 / kScan;
  objective(x0.t);
  double scan_best = x0.t;
  double scan_val = best;
  for (int i = 0; i < kScan; ++i) {
    const double t = x0.t + kStep * i;
    const double v = objective(t);
    if (v < scan_val) {
      scan_val = v;
      scan_best = t;
    }
  }
  constexpr double kInvPhi = 0.6180339887498949;
  auto golden = [&](double center) {
    double a = center - kStep, b = center + kStep;
    double c = b - kInvPhi * (b - a), d = a + kInvPhi * (b - a);
    double fc = objective(c), fd = objective(d);
    for (int it = 0; it < 90 && b - a > 1e-15; ++it) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - kInvPhi * (b - a);
        fc = objective(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + kInvPhi * (b - a);
        fd = objective(d);
      }
    }
  };
  golden(scan_best);
  if (scan_best != x0.t) golden(x0.t);
  ShadowResult<CirclePoint> r;
  r.point = {best_t};
  r.achieved_eps = best;
  r.lo = po.lo();
  r.hi = po.hi();
  r.tail_bound = -1.0;
  r.details = {{"method", "scan_golden_section"}, {"scan_points", kScan}, {"evaluations", evaluations},
               {"defect", defect(po)}, {"tail", "window only"}};
  if (!(best <= eps)) {
    Certificate cert;
    cert.kind = "shadowing";
    cert.bound = eps;
    cert.horizon = po.hi() - po.lo();
    cert.worst_value = best;
    cert.extra = r.details;
    throw DynamicsError("shadow: search did not reach the requested eps", cert);
  }
  return r;
}

/// Empirical delta for circle systems. Candidates are powers of two; the
/// trial pseudo-orbits for candidate 2^-i depend only on (seed, i), so the
/// returned delta is non-decreasing in eps.
template <class Sys>
ShadowingModulus empirical_circle_modulus(const Sys& sys, double eps, std::uint64_t seed) {
  if (!(eps > 0 && eps <= sys.diameter_bound())) throw std::invalid_argument("modulus: eps must lie in (0, 0.5]");
  constexpr std::int64_t kHalf = 20;
  constexpr int kRandomTrials = 12;
  int first = 1;
  while (std::ldexp(1.0, -first) > eps / 2) ++first;
  for (int i = first; i <= first + 40; ++i) {
    const double delta = std::ldexp(1.0, -i);
    Rng rng(seed, streams::kModulus, static_cast<std::uint64_t>(i));
    std::vector<PseudoOrbit<Sys>> trials;
    for (int t = 0; t < kRandomTrials; ++t) trials.push_back(perturbed_orbit(sys, sys.sample(rng), -kHalf, kHalf, delta, rng));
    for (double start : {0.0, 0.5}) {
      for (double sign : {1.0, -1.0}) {
        std::vector<CirclePoint> pts{{start}};
        for (std::int64_t k = -kHalf; k < kHalf; ++k) pts.push_back({wrap01(sys.apply(pts.back()).t + sign * 0.999 * delta)});
        trials.emplace_back(sys, -kHalf, std::move(pts));
      }
    }
    bool ok = true;
    double worst = 0.0;
    for (const auto& po : trials) {
      try {
        worst = std::max(worst, shadow_circle(po, eps).achieved_eps);
      } catch (const DynamicsError&) {
        ok = false;
        break;
      }
    }
    if (ok) {
      ShadowingModulus m;
      m.eps = eps;
      m.delta = delta;
      m.system = std::string(Sys::kind);
      m.constants = {{"method", "empirical"},
                     {"window", {-kHalf, kHalf}},
                     {"trials", trials.size()},
                     {"exponent", i},
                     {"worst_achieved_eps", worst},
                     {"seed", seed}};
      return m;
    }
  }
  Certificate c;
  c.kind = "modulus";
  c.bound = eps;
  c.horizon = 2 * kHalf;
  c.extra = {{"system", std::string(Sys::kind)}, {"reason", "no tested delta was certified"}};
  throw DynamicsError("modulus: no delta certified", c);
}

ShadowingModulus halving_modulus(std::string_view kind, double eps, double diameter) {
  if (!(eps > 0 && eps <= diameter)) throw std::invalid_argument("modulus: eps out of range");
  ShadowingModulus m;
  m.eps = eps;
  m.delta = eps / 2.0;
  m.system = std::string(kind);
  m.constants = {{"method", "read_off"}, {"factor", 0.5}};
  return m;
}

}  // namespace

ShadowResult<SymbolSeq> shadow(const PseudoOrbit<FullShift>& po, double eps) { return shadow_sequence(po, eps); }
ShadowResult<CubeSeq> shadow(const PseudoOrbit<CubeShift>& po, double eps) { return shadow_sequence(po, eps); }
ShadowResult<CirclePoint> shadow(const PseudoOrbit<NorthSouth>& po, double eps) { return shadow_circle(po, eps); }
ShadowResult<CirclePoint> shadow(const PseudoOrbit<CircleRotation>& po, double eps) { return shadow_circle(po, eps); }

ShadowingModulus modulus(const FullShift& sys, double eps, std::uint64_t) { return halving_modulus(FullShift::kind, eps, sys.diameter_bound()); }
ShadowingModulus modulus(const CubeShift& sys, double eps, std::uint64_t) { return halving_modulus(CubeShift::kind, eps, sys.diameter_bound()); }
ShadowingModulus modulus(const NorthSouth& sys, double eps, std::uint64_t seed) { return empirical_circle_modulus(sys, eps, seed); }
ShadowingModulus modulus(const CircleRotation& sys, double eps, std::uint64_t seed) { return empirical_circle_modulus(sys, eps, seed); }

}  // namespace shadowdyn
