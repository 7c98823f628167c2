#pragma once

#include <array>
#include <cstdint>
#include <string_view>

#include "shadowdyn/dyadic.hpp"
#include "shadowdyn/random.hpp"

namespace shadowdyn {

/// Point of the 2-torus with exact 512-bit coordinates in [0,1).
struct TorusPoint {
  Dyadic u;
  Dyadic v;

  static TorusPoint from_doubles(double u, double v) { return {Dyadic::from_double(u), Dyadic::from_double(v)}; }
  std::array<double, 2> as_doubles() const { return {u.to_double(), v.to_double()}; }

  friend bool operator==(const TorusPoint&, const TorusPoint&) = default;
};

/// max(circ|u_p - u_q|, circ|v_p - v_q|) with circ(t) = min(t, 1-t).
double torus_dist(const TorusPoint& p, const TorusPoint& q);

/// Eigen-data of a hyperbolic 2x2 integer matrix, with eigenvectors
/// normalized to max-norm 1. `basis_constant` is the max-norm of the
/// inverse eigenbasis matrix, so each eigen-coordinate of a vector w is at
/// most basis_constant * |w|_inf.
struct HyperbolicSplitting {
  double lambda_u = 0;  // |lambda_u| > 1
  double lambda_s = 0;  // |lambda_s| < 1
  std::array<double, 2> e_u{};
  std::array<double, 2> e_s{};
  double basis_constant = 0;

  /// Max-norm gain from pseudo-orbit defect to shadowing error:
  /// (1/(|lambda_u|-1) + 1/(1-|lambda_s|)) * basis_constant.
  double shadow_gain() const;
};

/// Linear automorphism x -> Mx mod 1 of the torus for an integer matrix
/// M = [[a, b], [c, d]] with |det M| = 1 and real eigenvalues off the unit circle.
class ToralAutomorphism {
 public:
  using Point = TorusPoint;
  static constexpr std::string_view kind = "cat";
  static constexpr bool exact = true;

  ToralAutomorphism() : ToralAutomorphism(2, 1, 1, 1) {}
  ToralAutomorphism(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);
  /// The cat map [[2,1],[1,1]].
  static ToralAutomorphism cat() { return {}; }

  Point apply(const Point& p) const;
  Point inverse(const Point& p) const;
  double dist(const Point& p, const Point& q) const { return torus_dist(p, q); }
  double diameter_bound() const { return 0.5; }
  Point sample(Rng& rng) const;
  /// Uniform in the open max-norm ball of radius r (r <= 0.5).
  Point sample_near(const Point& p, double r, Rng& rng) const;
  ToralAutomorphism inverse_system() const;

  std::array<std::int64_t, 4> matrix() const { return {a_, b_, c_, d_}; }
  std::int64_t determinant() const { return a_ * d_ - b_ * c_; }
  const HyperbolicSplitting& splitting() const { return split_; }

  friend bool operator==(const ToralAutomorphism& x, const ToralAutomorphism& y) {
    return x.matrix() == y.matrix();
  }

 private:
  std::int64_t a_, b_, c_, d_;
  HyperbolicSplitting split_;
};

/// Cat map (u,v) -> (2u+v, u+v) mod 1 and its inverse.
TorusPoint cat_apply(const TorusPoint& p);
TorusPoint cat_inverse(const TorusPoint& p);

/// p + t*dir on the torus, with dir given in doubles and t possibly negative.
TorusPoint torus_displace(const TorusPoint& p, std::array<double, 2> dir, double t);

/// Coordinates (a, b) of the shortest lift of p - q in the eigenbasis,
/// p - q = a*e_u + b*e_s, computed from the exact difference in 576-bit
/// arithmetic so that tiny stable components are resolved.
std::array<double, 2> eigen_coordinates(const ToralAutomorphism& sys, const TorusPoint& p, const TorusPoint& q);

}  // namespace shadowdyn
