#include "shadowdyn/torus.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace shadowdyn {

double torus_dist(const TorusPoint& p, const TorusPoint& q) {
  return std::max(circle_distance(p.u, q.u), circle_distance(p.v, q.v));
}

double HyperbolicSplitting::shadow_gain() const {
  return (1.0 / (std::fabs(lambda_u) - 1.0) + 1.0 / (1.0 - std::fabs(lambda_s))) * basis_constant;
}

namespace {

std::array<double, 2> eigenvector(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, double lambda) {
  std::array<double, 2> e{};
  if (b != 0) e = {static_cast<double>(b), lambda - static_cast<double>(a)};
  else e = {lambda - static_cast<double>(d), static_cast<double>(c)};
  const double n = std::max(std::fabs(e[0]), std::fabs(e[1]));
  e[0] /= n;
  e[1] /= n;
  if (e[0] < 0 || (e[0] == 0 && e[1] < 0)) e = {-e[0], -e[1]};
  return e;
}

}  // namespace

ToralAutomorphism::ToralAutomorphism(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d)
    : a_(a), b_(b), c_(c), d_(d) {
  const std::int64_t det = a * d - b * c;
  if (det != 1 && det != -1) throw std::invalid_argument("ToralAutomorphism: |det| must be 1");
  const double tr = static_cast<double>(a + d);
  const double disc = tr * tr - 4.0 * static_cast<double>(det);
  if (disc <= 0) throw std::invalid_argument("ToralAutomorphism: eigenvalues are not real and distinct");
  const double l1 = 0.5 * (tr + std::sqrt(disc));
  const double l2 = 0.5 * (tr - std::sqrt(disc));
  const double lu = std::fabs(l1) > std::fabs(l2) ? l1 : l2;
  const double ls = std::fabs(l1) > std::fabs(l2) ? l2 : l1;
  if (!(std::fabs(lu) > 1.0 && std::fabs(ls) < 1.0)) throw std::invalid_argument("ToralAutomorphism: matrix is not hyperbolic");
  split_.lambda_u = lu;
  split_.lambda_s = ls;
  split_.e_u = eigenvector(a, b, c, d, lu);
  split_.e_s = eigenvector(a, b, c, d, ls);
  const auto& eu = split_.e_u;
  const auto& es = split_.e_s;
  const double pdet = eu[0] * es[1] - es[0] * eu[1];
  // rows of P^{-1}: ( es1, -es0)/pdet and (-eu1, eu0)/pdet
  split_.basis_constant = std::max(std::fabs(es[1]) + std::fabs(es[0]), std::fabs(eu[1]) + std::fabs(eu[0])) / std::fabs(pdet);
}

TorusPoint ToralAutomorphism::apply(const TorusPoint& p) const {
  return {p.u.times(a_) + p.v.times(b_), p.u.times(c_) + p.v.times(d_)};
}

TorusPoint ToralAutomorphism::inverse(const TorusPoint& p) const {
  const std::int64_t det = determinant();
  // M^{-1} = det * [[d, -b], [-c, a]] since det = +-1
  return {p.u.times(det * d_) + p.v.times(-det * b_), p.u.times(-det * c_) + p.v.times(det * a_)};
}

TorusPoint ToralAutomorphism::sample(Rng& rng) const {
  const double u = rng.uniform();
  const double v = rng.uniform();
  return TorusPoint::from_doubles(u, v);
}

TorusPoint ToralAutomorphism::sample_near(const TorusPoint& p, double r, Rng& rng) const {
  const double rr = std::min(r, 0.5) * 0.999;
  const double du = rng.uniform(-rr, rr);
  const double dv = rng.uniform(-rr, rr);
  return {p.u + Dyadic::from_double(du), p.v + Dyadic::from_double(dv)};
}

ToralAutomorphism ToralAutomorphism::inverse_system() const {
  const std::int64_t det = determinant();
  return {det * d_, -det * b_, -det * c_, det * a_};
}

TorusPoint cat_apply(const TorusPoint& p) {
  static const ToralAutomorphism cat = ToralAutomorphism::cat();
  return cat.apply(p);
}

TorusPoint cat_inverse(const TorusPoint& p) {
  static const ToralAutomorphism cat = ToralAutomorphism::cat();
  return cat.inverse(p);
}

TorusPoint torus_displace(const TorusPoint& p, std::array<double, 2> dir, double t) {
  return {p.u + Dyadic::from_double(t * dir[0]), p.v + Dyadic::from_double(t * dir[1])};
}

}  // namespace shadowdyn
