#include "shadowdyn/expansivity.hpp"

#include <cmath>

namespace shadowdyn {

namespace {

double offset_within(double v, double d, double eps) {
  double y = std::clamp(v + d, 0.0, 1.0);
  while (std::fabs(y - v) > eps) y = std::nextafter(y, v);
  return y;
}

std::size_t member_count(double step) {
  if (!(step > 0 && step <= 0.5)) throw std::invalid_argument("witness: parameter step must lie in (0, 1/2]");
  return static_cast<std::size_t>(std::llround(1.0 / step)) + 1;
}

}  // namespace

ContinuumWitness<CubeSeq> cube_box_witness(const CubeSeq& x, double eps, std::int64_t horizon, std::int64_t span, double parameter_step) {
  if (!(eps > 0 && eps <= 1)) throw std::invalid_argument("cube_box_witness: eps must lie in (0, 1]");
  if (span < 0) throw std::invalid_argument("cube_box_witness: span must be non-negative");
  const std::size_t count = member_count(parameter_step);
  const CubeSeq base = x.widened_to(-span, span);
  ContinuumWitness<CubeSeq> w;
  w.center = x;
  w.members.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double t = 2.0 * static_cast<double>(k) / static_cast<double>(count - 1) - 1.0;
    std::vector<double> win = base.window();
    for (std::int64_t i = -span; i <= span; ++i) {
      const double sign = (i % 2 == 0) ? 1.0 : -1.0;
      auto& v = win[static_cast<std::size_t>(i - base.lo())];
      v = offset_within(v, sign * t * eps, eps);
    }
    const double l = offset_within(base.left_tail()[0], t * eps, eps);
    const double r = offset_within(base.right_tail()[0], t * eps, eps);
    w.members.emplace_back(base.lo(), std::move(win), std::vector<double>{l}, std::vector<double>{r});
  }
  w.parameter_step = 1.0 / static_cast<double>(count - 1);
  w.construction = "cube_box";
  w.eps = eps;
  w.horizon = horizon;
  w.params = {{"span", span}, {"path", "corner to opposite corner, alternating signs"}};
  return w;
}

std::vector<CirclePoint> circle_arc(double mid, double length, double parameter_step) {
  if (!(length > 0 && length < 1)) throw std::invalid_argument("circle_arc: length must lie in (0, 1)");
  const std::size_t count = member_count(parameter_step);
  std::vector<CirclePoint> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double s = static_cast<double>(k) / static_cast<double>(count - 1) - 0.5;
    out.push_back({wrap01(mid + s * length)});
  }
  return out;
}

ContinuumWitness<TorusPoint> torus_segment_witness(const TorusPoint& x, std::array<double, 2> dir, double length, double eps,
                                                   std::int64_t horizon, double parameter_step) {
  if (!(length > 0)) throw std::invalid_argument("torus_segment_witness: length must be positive");
  const double norm = std::max(std::fabs(dir[0]), std::fabs(dir[1]));
  if (!(norm > 0)) throw std::invalid_argument("torus_segment_witness: direction must be nonzero");
  dir = {dir[0] / norm, dir[1] / norm};
  const std::size_t count = member_count(parameter_step);
  ContinuumWitness<TorusPoint> w;
  w.center = x;
  for (std::size_t k = 0; k < count; ++k) {
    const double s = static_cast<double>(k) / static_cast<double>(count - 1) - 0.5;
    w.members.push_back(torus_displace(x, dir, s * length));
  }
  w.parameter_step = 1.0 / static_cast<double>(count - 1);
  w.construction = "torus_segment";
  w.eps = eps;
  w.horizon = horizon;
  w.params = {{"direction", dir}, {"length", length}};
  return w;
}

namespace detail {

double cube_closed_form(const CubeSeq& x, const CubeSeq& y, std::int64_t n) {
  const std::int64_t lo = std::min(x.lo(), y.lo());
  const std::int64_t hi = std::max(x.hi(), y.hi());
  auto weight = [](double o, std::int64_t gap) { return std::ldexp(o, -static_cast<int>(std::min<std::int64_t>(gap, 1100))); };
  double sup = 0.0;
  for (std::int64_t j = lo; j <= hi; ++j) sup = std::max(sup, weight(std::fabs(y.at(j) - x.at(j)), std::abs(j - n)));
  const double right = std::fabs(y.right_tail()[0] - x.right_tail()[0]);
  const double left = std::fabs(y.left_tail()[0] - x.left_tail()[0]);
  sup = std::max(sup, weight(right, n > hi ? 0 : hi + 1 - n));
  sup = std::max(sup, weight(left, n < lo ? 0 : n - (lo - 1)));
  return sup;
}

}  // namespace detail

}  // namespace shadowdyn
