#pragma once

#include <algorithm>
#include <string_view>

#include "shadowdyn/system.hpp"

namespace shadowdyn {

template <class L, class R>
struct ProductPoint {
  L left;
  R right;
  friend bool operator==(const ProductPoint&, const ProductPoint&) = default;
};

/// f x g acting componentwise, with the max metric.
template <DynamicalSystem X, DynamicalSystem Y>
class Product {
 public:
  using Left = X;
  using Right = Y;
  using Point = ProductPoint<PointOf<X>, PointOf<Y>>;
  static constexpr std::string_view kind = "product";
  static constexpr bool exact = X::exact && Y::exact;

  Product() = default;
  Product(X x, Y y) : x_(std::move(x)), y_(std::move(y)) {}

  Point apply(const Point& p) const { return {x_.apply(p.left), y_.apply(p.right)}; }
  Point inverse(const Point& p) const { return {x_.inverse(p.left), y_.inverse(p.right)}; }
  double dist(const Point& p, const Point& q) const {
    return std::max(x_.dist(p.left, q.left), y_.dist(p.right, q.right));
  }
  double diameter_bound() const { return std::max(x_.diameter_bound(), y_.diameter_bound()); }
  Point sample(Rng& rng) const {
    auto l = x_.sample(rng);
    auto r = y_.sample(rng);
    return {std::move(l), std::move(r)};
  }
  Point sample_near(const Point& p, double r, Rng& rng) const {
    auto a = x_.sample_near(p.left, r, rng);
    auto b = y_.sample_near(p.right, r, rng);
    return {std::move(a), std::move(b)};
  }
  Product inverse_system() const { return {x_.inverse_system(), y_.inverse_system()}; }

  const X& left() const { return x_; }
  const Y& right() const { return y_; }
  friend bool operator==(const Product&, const Product&) = default;

 private:
  X x_;
  Y y_;
};

template <class S>
inline constexpr bool is_product_v = false;
template <class X, class Y>
inline constexpr bool is_product_v<Product<X, Y>> = true;

}  // namespace shadowdyn
