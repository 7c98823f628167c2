#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string_view>
#include <type_traits>
#include <vector>

#include "shadowdyn/random.hpp"

namespace shadowdyn {

/// Bi-infinite sequence stored as a window over [lo, hi] plus periodic tails.
///
/// For i > hi the value is right_tail[(i - hi - 1) mod p]. For i < lo the
/// left tail is read so that the word appears left to right as ...LLL[window],
/// i.e. the value at lo-1-k is left_tail[p - 1 - (k mod p)]. Equality is
/// logical: representations of the same sequence compare equal.
///
/// Symbol sequences (integral T) carry an alphabet size and every symbol lies
/// in [0, alphabet). Real sequences (floating T) take values in [0,1] and
/// have constant tails.
template <class T>
class Sequence {
 public:
  using value_type = T;
  static constexpr bool kSymbolic = std::is_integral_v<T>;

  Sequence() : Sequence(0, {T{}}, {T{}}, {T{}}, kSymbolic ? 2 : 0) {}
  Sequence(std::int64_t lo, std::vector<T> window, std::vector<T> left_tail, std::vector<T> right_tail, int alphabet = kSymbolic ? 2 : 0)
      : lo_(lo), window_(std::move(window)), left_(std::move(left_tail)), right_(std::move(right_tail)), alphabet_(alphabet) {
    validate();
  }

  static Sequence constant(T value, int alphabet = kSymbolic ? 2 : 0) { return Sequence(0, {value}, {value}, {value}, alphabet); }

  std::int64_t lo() const { return lo_; }
  std::int64_t hi() const { return lo_ + static_cast<std::int64_t>(window_.size()) - 1; }
  const std::vector<T>& window() const { return window_; }
  const std::vector<T>& left_tail() const { return left_; }
  const std::vector<T>& right_tail() const { return right_; }
  int alphabet() const { return alphabet_; }

  T at(std::int64_t i) const {
    if (i < lo_) {
      const auto p = static_cast<std::int64_t>(left_.size());
      const std::int64_t k = (lo_ - 1 - i) % p;
      return left_[static_cast<std::size_t>(p - 1 - k)];
    }
    if (i > hi()) {
      const auto p = static_cast<std::int64_t>(right_.size());
      return right_[static_cast<std::size_t>((i - hi() - 1) % p)];
    }
    return window_[static_cast<std::size_t>(i - lo_)];
  }
  T operator[](std::int64_t i) const { return at(i); }

  /// result[i] == (*this)[i + k].
  Sequence shifted(std::int64_t k) const {
    Sequence s = *this;
    s.lo_ -= k;
    return s;
  }

  /// Same sequence with the window covering at least [lo, hi].
  Sequence widened_to(std::int64_t lo, std::int64_t hi) const {
    const std::int64_t nlo = std::min(lo, lo_);
    const std::int64_t nhi = std::max(hi, this->hi());
    std::vector<T> w;
    w.reserve(static_cast<std::size_t>(nhi - nlo + 1));
    for (std::int64_t i = nlo; i <= nhi; ++i) w.push_back(at(i));
    std::vector<T> l(left_.size()), r(right_.size());
    const auto pl = static_cast<std::int64_t>(l.size());
    for (std::int64_t k = 0; k < pl; ++k) l[static_cast<std::size_t>(pl - 1 - k)] = at(nlo - 1 - k);
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = at(nhi + 1 + static_cast<std::int64_t>(k));
    return Sequence(nlo, std::move(w), std::move(l), std::move(r), alphabet_);
  }
  Sequence widened(std::int64_t n) const { return widened_to(lo_ - n, hi() + n); }

  /// Copy with coordinate i replaced.
  Sequence with(std::int64_t i, T value) const {
    Sequence s = widened_to(i, i);
    s.window_[static_cast<std::size_t>(i - s.lo_)] = value;
    s.validate();
    return s;
  }

  /// result[i] == (*this)[-i].
  Sequence reflected() const {
    std::vector<T> w(window_.rbegin(), window_.rend());
    std::vector<T> l(right_.rbegin(), right_.rend());
    std::vector<T> r(left_.rbegin(), left_.rend());
    return Sequence(-hi(), std::move(w), std::move(l), std::move(r), alphabet_);
  }

  /// Calls fn(i, x[i], y[i]) on every index of the range that decides all
  /// index-weighted comparisons between x and y: beyond it both sequences
  /// are jointly periodic and every index has a copy inside with smaller |i|.
  template <class F>
  friend void for_each_deciding_index(const Sequence& x, const Sequence& y, F&& fn) {
    const auto lcm = [](std::size_t a, std::size_t b) { return static_cast<std::int64_t>(std::lcm(a, b)); };
    const std::int64_t lo = std::min({x.lo_, y.lo_, std::int64_t{0}}) - lcm(x.left_.size(), y.left_.size());
    const std::int64_t hi = std::max({x.hi(), y.hi(), std::int64_t{0}}) + lcm(x.right_.size(), y.right_.size());
    for (std::int64_t i = lo; i <= hi; ++i) fn(i, x.at(i), y.at(i));
  }

  friend bool operator==(const Sequence& x, const Sequence& y) {
    if (x.alphabet_ != y.alphabet_) return false;
    bool same = true;
    for_each_deciding_index(x, y, [&](std::int64_t, T a, T b) { same = same && (a == b); });
    return same;
  }

 private:
  void validate() const {
    if (left_.empty() || right_.empty()) throw std::invalid_argument("Sequence: tails must be non-empty");
    if constexpr (kSymbolic) {
      if (alphabet_ < 1) throw std::invalid_argument("Sequence: alphabet size must be positive");
      auto bad = [&](T s) { return s < 0 || static_cast<int>(s) >= alphabet_; };
      if (std::ranges::any_of(window_, bad) || std::ranges::any_of(left_, bad) || std::ranges::any_of(right_, bad))
        throw std::invalid_argument("Sequence: symbol outside alphabet");
    } else {
      if (left_.size() != 1 || right_.size() != 1) throw std::invalid_argument("Sequence: real sequences have constant tails");
      auto bad = [](T s) { return !(s >= 0 && s <= 1); };
      if (std::ranges::any_of(window_, bad) || bad(left_[0]) || bad(right_[0]))
        throw std::invalid_argument("Sequence: entries must lie in [0,1]");
    }
  }

  std::int64_t lo_;
  std::vector<T> window_;
  std::vector<T> left_;
  std::vector<T> right_;
  int alphabet_;
};

using SymbolSeq = Sequence<std::uint8_t>;
using CubeSeq = Sequence<double>;

/// 2^{-min{|i| : x_i != y_i}}, or 0 when x == y. Throws on alphabet mismatch.
double seq_dist(const SymbolSeq& x, const SymbolSeq& y);
/// sup_i |x_i - y_i| / 2^{|i|}, exact in floating point.
double cube_dist(const CubeSeq& x, const CubeSeq& y);

/// Smallest m >= 0 with 2^{-m} < r: changing coordinates with |i| >= m
/// moves a point by less than r in either sequence metric.
int first_free_coordinate(double r);

/// Full shift on `alphabet` symbols. direction +1 is sigma (coordinate i of
/// the image is coordinate i+1 of the input); -1 is its inverse.
class FullShift {
 public:
  using Point = SymbolSeq;
  static constexpr std::string_view kind = "shift";
  static constexpr bool exact = true;

  explicit FullShift(int alphabet = 2, int direction = 1);

  Point apply(const Point& p) const { return p.shifted(direction_); }
  Point inverse(const Point& p) const { return p.shifted(-direction_); }
  double dist(const Point& p, const Point& q) const { return seq_dist(p, q); }
  double diameter_bound() const { return 1.0; }
  Point sample(Rng& rng) const;
  Point sample_near(const Point& p, double r, Rng& rng) const;
  FullShift inverse_system() const { return FullShift(alphabet_, -direction_); }

  int alphabet() const { return alphabet_; }
  int direction() const { return direction_; }
  friend bool operator==(const FullShift&, const FullShift&) = default;

 private:
  int alphabet_;
  int direction_;
};

/// Shift on [0,1]^Z with the metric sup |x_i - y_i| / 2^{|i|}.
class CubeShift {
 public:
  using Point = CubeSeq;
  static constexpr std::string_view kind = "cube";
  static constexpr bool exact = true;

  explicit CubeShift(int direction = 1);

  Point apply(const Point& p) const { return p.shifted(direction_); }
  Point inverse(const Point& p) const { return p.shifted(-direction_); }
  double dist(const Point& p, const Point& q) const { return cube_dist(p, q); }
  double diameter_bound() const { return 1.0; }
  Point sample(Rng& rng) const;
  Point sample_near(const Point& p, double r, Rng& rng) const;
  CubeShift inverse_system() const { return CubeShift(-direction_); }

  int direction() const { return direction_; }
  friend bool operator==(const CubeShift&, const CubeShift&) = default;

 private:
  int direction_;
};

}  // namespace shadowdyn
