#include <boost/multiprecision/cpp_bin_float.hpp>
#include <algorithm>
#include <cmath>

#include "shadowdyn/shadowing.hpp"

namespace shadowdyn {

namespace {

namespace mp = boost::multiprecision;
using Real = mp::number<mp::cpp_bin_float<576, mp::digit_base_2>, mp::et_off>;

Real to_real(const Dyadic& d) {
  const bool neg = d.negative_lift();
  const Dyadic m = neg ? -d : d;
  Real r = 0;
  for (int i = 0; i < Dyadic::kLimbs; ++i) r += mp::ldexp(Real(m.limbs()[static_cast<std::size_t>(i)]), 64 * i - Dyadic::kBits);
  return neg ? Real(-r) : r;
}

Dyadic to_dyadic(Real x) {
  x -= mp::floor(x);
  Dyadic::Limbs limbs{};
  for (int i = Dyadic::kLimbs - 1; i >= 0; --i) {
    x = mp::ldexp(x, 64);
    const Real top = mp::floor(x);
    limbs[static_cast<std::size_t>(i)] = top.convert_to<unsigned long long>();
    x -= top;
  }
  return Dyadic(limbs);
}

struct Basis {
  Real lu, ls;
  Real eu0, eu1, es0, es1;
  Real det;

  // w = alpha*e_u + beta*e_s
  std::pair<Real, Real> decompose(const Real& w0, const Real& w1) const {
    return {(w0 * es1 - es0 * w1) / det, (eu0 * w1 - w0 * eu1) / det};
  }
};

std::pair<Real, Real> eigvec(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, const Real& lambda) {
  Real e0, e1;
  if (b != 0) {
    e0 = Real(b);
    e1 = lambda - Real(a);
  } else {
    e0 = lambda - Real(d);
    e1 = Real(c);
  }
  const Real n = mp::fabs(e0) > mp::fabs(e1) ? mp::fabs(e0) : mp::fabs(e1);
  e0 /= n;
  e1 /= n;
  if (e0 < 0 || (e0 == 0 && e1 < 0)) {
    e0 = -e0;
    e1 = -e1;
  }
  return {e0, e1};
}

Basis make_basis(const ToralAutomorphism& sys) {
  const auto [a, b, c, d] = sys.matrix();
  const Real tr = Real(a + d);
  const Real sq = mp::sqrt(tr * tr - 4 * Real(sys.determinant()));
  const Real l1 = (tr + sq) / 2;
  const Real l2 = (tr - sq) / 2;
  Basis B;
  B.lu = mp::fabs(l1) > mp::fabs(l2) ? l1 : l2;
  B.ls = mp::fabs(l1) > mp::fabs(l2) ? l2 : l1;
  std::tie(B.eu0, B.eu1) = eigvec(a, b, c, d, B.lu);
  std::tie(B.es0, B.es1) = eigvec(a, b, c, d, B.ls);
  B.det = B.eu0 * B.es1 - B.es0 * B.eu1;
  return B;
}

const Basis& basis_for(const ToralAutomorphism& sys) {
  static const ToralAutomorphism cat = ToralAutomorphism::cat();
  static const Basis cat_basis = make_basis(cat);
  static const Basis cat_inv_basis = make_basis(cat.inverse_system());
  if (sys == cat) return cat_basis;
  if (sys == cat.inverse_system()) return cat_inv_basis;
  thread_local ToralAutomorphism last = cat;
  thread_local Basis last_basis = cat_basis;
  if (!(sys == last)) {
    last = sys;
    last_basis = make_basis(sys);
  }
  return last_basis;
}

Json splitting_json(const HyperbolicSplitting& s) {
  return {{"lambda_u", s.lambda_u}, {"lambda_s", s.lambda_s}, {"e_u", s.e_u}, {"e_s", s.e_s}, {"basis_constant", s.basis_constant},
          {"gain", s.shadow_gain()}};
}

}  // namespace

std::array<double, 2> eigen_coordinates(const ToralAutomorphism& sys, const TorusPoint& p, const TorusPoint& q) {
  const Basis& B = basis_for(sys);
  const auto [al, be] = B.decompose(to_real(p.u - q.u), to_real(p.v - q.v));
  return {al.convert_to<double>(), be.convert_to<double>()};
}

ShadowResult<TorusPoint> shadow(const PseudoOrbit<ToralAutomorphism>& po, double eps) {
  const auto& sys = po.system();
  const auto& split = sys.splitting();
  const double gain = split.shadow_gain();
  const double def = defect(po);
  if (!(def * gain < 0.25)) {
    Certificate c;
    c.kind = "shadowing_precondition";
    c.bound_name = "defect_limit";
    c.bound = 0.25 / gain;
    c.horizon = po.hi() - po.lo();
    c.worst_value = def;
    c.extra = {{"system", "cat"}, {"constants", splitting_json(split)}};
    throw DynamicsError("shadow: defect too large for unambiguous lifts", c);
  }

  const Basis& B = basis_for(sys);
  const std::size_t n = po.size();
  const auto& x = po.points();
  std::vector<Real> alpha(n, Real(0)), beta(n, Real(0));
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const TorusPoint fx = sys.apply(x[k]);
    std::tie(alpha[k], beta[k]) = B.decompose(to_real(fx.u - x[k + 1].u), to_real(fx.v - x[k + 1].v));
  }
  // Correction w_k = a_k e_u + b_k e_s solves w_{k+1} = A w_k + e_k with no
  // error outside the window: a vanishes after hi, b vanishes before lo.
  std::vector<Real> a(n, Real(0)), b(n, Real(0));
  for (std::size_t k = n - 1; k-- > 0;) a[k] = (a[k + 1] - alpha[k]) / B.lu;
  for (std::size_t k = 0; k + 1 < n; ++k) b[k + 1] = B.ls * b[k] + beta[k];

  Real predicted = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const Real w0 = mp::fabs(a[k] * B.eu0 + b[k] * B.es0);
    const Real w1 = mp::fabs(a[k] * B.eu1 + b[k] * B.es1);
    predicted = std::max({predicted, w0, w1});
  }

  const auto i0 = static_cast<std::size_t>(-po.lo());
  const Real w0 = a[i0] * B.eu0 + b[i0] * B.es0;
  const Real w1 = a[i0] * B.eu1 + b[i0] * B.es1;
  ShadowResult<TorusPoint> r;
  r.point = {x[i0].u + to_dyadic(w0), x[i0].v + to_dyadic(w1)};
  r.lo = po.lo();
  r.hi = po.hi();

  double achieved = 0.0;
  TorusPoint y = r.point;
  for (std::int64_t k = 0; k <= po.hi(); ++k) {
    achieved = std::max(achieved, torus_dist(y, po[k]));
    y = sys.apply(y);
  }
  y = r.point;
  for (std::int64_t k = -1; k >= po.lo(); --k) {
    y = sys.inverse(y);
    achieved = std::max(achieved, torus_dist(y, po[k]));
  }
  r.achieved_eps = achieved;
  // Outside the window the correction is a_lo*lambda_u^{-j} e_u before lo and
  // b_hi*lambda_s^{j} e_s after hi, both bounded by their window-end values.
  r.tail_bound = std::max(mp::fabs(a.front()), mp::fabs(b.back())).convert_to<double>();
  r.details = {{"constants", splitting_json(split)},
               {"defect", def},
               {"predicted_eps", predicted.convert_to<double>()},
               {"defect_times_gain", def * gain}};
  if (!(achieved <= eps)) {
    Certificate c;
    c.kind = "shadowing";
    c.bound = eps;
    c.horizon = po.hi() - po.lo();
    c.worst_value = achieved;
    c.extra = r.details;
    throw DynamicsError("shadow: verified deviation exceeds the requested eps", c);
  }
  return r;
}

ShadowingModulus modulus(const ToralAutomorphism& sys, double eps, std::uint64_t) {
  if (!(eps > 0 && eps <= sys.diameter_bound())) throw std::invalid_argument("modulus: eps must lie in (0, 0.5]");
  const auto& s = sys.splitting();
  const double rate = std::max(1.0 / std::fabs(s.lambda_u), std::fabs(s.lambda_s));
  ShadowingModulus m;
  m.eps = eps;
  const double lift_cap = 0.249 / s.shadow_gain();
  m.delta = std::min(eps * (1.0 - rate) / (2.0 * s.basis_constant), lift_cap);
  m.system = "cat";
  m.constants = splitting_json(s);
  m.constants["contraction_rate"] = rate;
  m.constants["lift_cap"] = lift_cap;
  return m;
}

}  // namespace shadowdyn
