#pragma once

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "shadowdyn/certificate.hpp"
#include "shadowdyn/serialize.hpp"
#include "shadowdyn/system.hpp"

namespace shadowdyn {

/// Finite window x_lo..x_hi (lo <= 0 <= hi) of a bi-infinite pseudo-orbit.
/// Indices outside the window follow the true orbit of the nearest end
/// point, so every jump outside the window is zero.
template <DynamicalSystem S>
class PseudoOrbit {
 public:
  using Point = PointOf<S>;

  PseudoOrbit(S sys, std::int64_t lo, std::vector<Point> points) : sys_(std::move(sys)), lo_(lo), points_(std::move(points)) {
    if (points_.empty()) throw std::invalid_argument("PseudoOrbit: empty window");
    if (lo_ > 0 || hi() < 0) throw std::invalid_argument("PseudoOrbit: window must contain index 0");
  }

  const S& system() const { return sys_; }
  std::int64_t lo() const { return lo_; }
  std::int64_t hi() const { return lo_ + static_cast<std::int64_t>(points_.size()) - 1; }
  std::size_t size() const { return points_.size(); }
  const std::vector<Point>& points() const { return points_; }
  const Point& operator[](std::int64_t k) const { return points_.at(static_cast<std::size_t>(k - lo_)); }

  /// x_k for any k, extending by the true orbit outside the window.
  Point at(std::int64_t k) const {
    if (k < lo_) return iterate(sys_, points_.front(), k - lo_);
    if (k > hi()) return iterate(sys_, points_.back(), k - hi());
    return (*this)[k];
  }

  /// x_lo..x_hi extended to cover [from, to].
  std::vector<Point> extended(std::int64_t from, std::int64_t to) const {
    std::vector<Point> out;
    if (to < from) return out;
    out.reserve(static_cast<std::size_t>(to - from + 1));
    for (std::int64_t k = from; k <= to; ++k) out.push_back(at(k));
    return out;
  }

  /// d(f(x_k), x_{k+1}) for k in [lo, hi-1].
  std::vector<double> jumps() const {
    std::vector<double> j;
    j.reserve(points_.size() ? points_.size() - 1 : 0);
    for (std::size_t k = 0; k + 1 < points_.size(); ++k) j.push_back(sys_.dist(sys_.apply(points_[k]), points_[k + 1]));
    return j;
  }

 private:
  S sys_;
  std::int64_t lo_;
  std::vector<Point> points_;
};

/// Largest jump; equal to the bi-infinite defect because the tails are true orbits.
template <DynamicalSystem S>
double defect(const PseudoOrbit<S>& po) {
  double d = 0.0;
  for (double j : po.jumps()) d = std::max(d, j);
  return d;
}

/// The true orbit of x over [lo, hi].
template <DynamicalSystem S>
PseudoOrbit<S> true_orbit(const S& sys, const PointOf<S>& x, std::int64_t lo, std::int64_t hi) {
  std::vector<PointOf<S>> pts;
  pts.reserve(static_cast<std::size_t>(hi - lo + 1));
  PointOf<S> p = iterate(sys, x, lo);
  for (std::int64_t k = lo; k <= hi; ++k) {
    pts.push_back(p);
    if (k < hi) p = sys.apply(p);
  }
  return PseudoOrbit<S>(sys, lo, std::move(pts));
}

/// Past of x joined to the future of x1: x_k = f^k(x) for k < 0 and
/// x_k = f^k(x1) for k >= 0. The only nonzero jump is d(x, x1) at k = -1.
template <DynamicalSystem S>
PseudoOrbit<S> splice(const S& sys, const PointOf<S>& x, const PointOf<S>& x1, std::int64_t back, std::int64_t fwd) {
  if (back < 1 || fwd < 1) throw std::invalid_argument("splice: back and fwd must be at least 1");
  std::vector<PointOf<S>> pts(static_cast<std::size_t>(back + fwd + 1));
  PointOf<S> p = x;
  for (std::int64_t k = -1; k >= -back; --k) {
    p = sys.inverse(p);
    pts[static_cast<std::size_t>(k + back)] = p;
  }
  p = x1;
  for (std::int64_t k = 0; k <= fwd; ++k) {
    pts[static_cast<std::size_t>(k + back)] = p;
    if (k < fwd) p = sys.apply(p);
  }
  return PseudoOrbit<S>(sys, -back, std::move(pts));
}

/// x_{k+1} drawn uniformly from the open ball of radius `jump` around
/// f(x_k), starting at x_lo = x. Every jump is below `jump`.
template <DynamicalSystem S>
PseudoOrbit<S> perturbed_orbit(const S& sys, const PointOf<S>& x, std::int64_t lo, std::int64_t hi, double jump, Rng& rng) {
  std::vector<PointOf<S>> pts;
  pts.reserve(static_cast<std::size_t>(hi - lo + 1));
  pts.push_back(x);
  for (std::int64_t k = lo; k < hi; ++k) pts.push_back(sys.sample_near(sys.apply(pts.back()), jump, rng));
  return PseudoOrbit<S>(sys, lo, std::move(pts));
}

/// Strict check defect < delta. Records the index k of the worst jump
/// d(f(x_k), x_{k+1}) and the full jump profile.
template <DynamicalSystem S>
Certificate validate(const PseudoOrbit<S>& po, double delta) {
  if (!(delta > 0)) throw std::invalid_argument("validate: delta must be positive");
  const auto j = po.jumps();
  Certificate c;
  c.kind = "pseudo_orbit";
  c.bound_name = "delta";
  c.bound = delta;
  c.horizon = po.hi() - po.lo();
  c.worst_index = po.lo();
  for (std::size_t k = 0; k < j.size(); ++k) {
    if (j[k] > c.worst_value) {
      c.worst_value = j[k];
      c.worst_index = po.lo() + static_cast<std::int64_t>(k);
    }
  }
  c.pass = c.worst_value < delta;
  c.extra = {{"lo", po.lo()}, {"hi", po.hi()}, {"jumps", j}, {"system", std::string(S::kind)}};
  return c;
}

/// Forward pseudo-orbit x_0..x_hi whose jumps are recorded and expected to
/// tend to zero. Only the recorded prefix is ever certified.
template <DynamicalSystem S>
struct LimitPseudoOrbit {
  S system;
  std::vector<PointOf<S>> points;
  /// decay[k] = d(f(x_k), x_{k+1}).
  std::vector<double> decay;

  LimitPseudoOrbit(S sys, std::vector<PointOf<S>> pts) : system(std::move(sys)), points(std::move(pts)) {
    if (points.empty()) throw std::invalid_argument("LimitPseudoOrbit: empty");
    for (std::size_t k = 0; k + 1 < points.size(); ++k) decay.push_back(system.dist(system.apply(points[k]), points[k + 1]));
  }
  std::int64_t hi() const { return static_cast<std::int64_t>(points.size()) - 1; }
};

/// Pseudo-orbit y_k = x_{N+k} (k >= 0), true orbit of x_N before; a shadow z
/// of it yields f^{-offset}(z) as a limit shadow of the original.
template <DynamicalSystem S>
struct SplicedLimit {
  PseudoOrbit<S> orbit;
  std::int64_t offset;
};

/// Smallest N < hi with every recorded jump at index >= N below delta.
template <DynamicalSystem S>
std::int64_t first_valid_offset(const LimitPseudoOrbit<S>& lpo, double delta) {
  std::int64_t n = static_cast<std::int64_t>(lpo.decay.size());
  while (n > 0 && lpo.decay[static_cast<std::size_t>(n - 1)] < delta) --n;
  if (n >= lpo.hi()) {
    Certificate c;
    c.kind = "splice_limit";
    c.bound_name = "delta";
    c.bound = delta;
    c.horizon = lpo.hi();
    c.worst_index = lpo.hi() - 1;
    c.worst_value = lpo.decay.empty() ? 0.0 : lpo.decay.back();
    c.extra = {{"reason", "recorded jumps never fall below delta"}};
    throw DynamicsError("splice_limit: no valid offset in the recorded prefix", c);
  }
  return n;
}

template <DynamicalSystem S>
SplicedLimit<S> splice_limit(const LimitPseudoOrbit<S>& lpo, std::int64_t n, double delta) {
  if (n < 0 || n > lpo.hi()) throw std::invalid_argument("splice_limit: offset outside the recorded prefix");
  for (std::size_t k = static_cast<std::size_t>(n); k < lpo.decay.size(); ++k) {
    if (!(lpo.decay[k] < delta)) {
      Certificate c;
      c.kind = "splice_limit";
      c.bound_name = "delta";
      c.bound = delta;
      c.horizon = lpo.hi();
      c.worst_index = static_cast<std::int64_t>(k);
      c.worst_value = lpo.decay[k];
      c.extra = {{"offset", n}};
      throw DynamicsError("splice_limit: jump at or above delta after the offset", c);
    }
  }
  std::vector<PointOf<S>> pts(lpo.points.begin() + n, lpo.points.end());
  return {PseudoOrbit<S>(lpo.system, 0, std::move(pts)), n};
}

template <DynamicalSystem S>
SplicedLimit<S> splice_limit(const LimitPseudoOrbit<S>& lpo, double delta) {
  return splice_limit(lpo, first_valid_offset(lpo, delta), delta);
}

template <DynamicalSystem S>
Json pseudo_orbit_to_json(const PseudoOrbit<S>& po) {
  Json pts = Json::array();
  for (const auto& p : po.points()) pts.push_back(point_to_json(p));
  return {{"lo", po.lo()}, {"hi", po.hi()}, {"points", pts}, {"system", std::string(S::kind)}};
}

template <DynamicalSystem S>
std::string pseudo_orbit_to_csv(const PseudoOrbit<S>& po) {
  std::vector<std::string> head{"index"};
  for (auto& h : PointCodec<PointOf<S>>::csv_header()) head.push_back(h);
  std::string out = csv_line(head);
  for (std::int64_t k = po.lo(); k <= po.hi(); ++k) {
    std::vector<std::string> row{std::to_string(k)};
    for (auto& f : PointCodec<PointOf<S>>::csv_fields(po[k])) row.push_back(f);
    out += csv_line(row);
  }
  return out;
}

/// Parses `index,<coords...>` rows with consecutive indices containing 0.
template <DynamicalSystem S>
PseudoOrbit<S> pseudo_orbit_from_csv(const S& sys, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("pseudo-orbit CSV: missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> want{"index"};
  for (auto& h : PointCodec<PointOf<S>>::csv_header()) want.push_back(h);
  if (split(line, ',') != want) throw std::invalid_argument("pseudo-orbit CSV: header must be '" + csv_line(want).substr(0, csv_line(want).size() - 1) + "'");
  std::vector<PointOf<S>> pts;
  std::int64_t lo = 0, expect = 0;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != want.size()) throw std::invalid_argument("pseudo-orbit CSV: row " + std::to_string(row + 1) + " has wrong column count");
    const auto idx = parse_int(f[0]);
    if (row == 0) lo = expect = idx;
    if (idx != expect) throw std::invalid_argument("pseudo-orbit CSV: indices must be consecutive");
    std::size_t pos = 1;
    if constexpr (requires { sys.alphabet(); } && std::is_same_v<PointOf<S>, SymbolSeq>)
      pts.push_back(PointCodec<SymbolSeq>::from_csv(f, pos, sys.alphabet()));
    else
      pts.push_back(PointCodec<PointOf<S>>::from_csv(f, pos));
    ++expect;
    ++row;
  }
  return PseudoOrbit<S>(sys, lo, std::move(pts));
}

}  // namespace shadowdyn
