#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

#include "shadowdyn/certificate.hpp"
#include "shadowdyn/circle.hpp"
#include "shadowdyn/product.hpp"
#include "shadowdyn/sequence.hpp"
#include "shadowdyn/torus.hpp"

namespace shadowdyn {

/// Shortest round-trip decimal form of x.
std::string format_double(double x);
/// Strict parse of a full decimal string; throws std::invalid_argument.
double parse_double(std::string_view s);
long long parse_int(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

/// JSON and CSV encodings of points. CSV columns are named by `csv_header`;
/// sequence words are written as space-separated symbols inside one field.
template <class P>
struct PointCodec;

template <>
struct PointCodec<TorusPoint> {
  static Json to_json(const TorusPoint& p);
  static TorusPoint from_json(const Json& j);
  static std::vector<std::string> csv_header() { return {"u", "v"}; }
  static std::vector<std::string> csv_fields(const TorusPoint& p);
  static TorusPoint from_csv(const std::vector<std::string>& f, std::size_t& pos);
};

template <>
struct PointCodec<CirclePoint> {
  static Json to_json(const CirclePoint& p);
  static CirclePoint from_json(const Json& j);
  static std::vector<std::string> csv_header() { return {"t"}; }
  static std::vector<std::string> csv_fields(const CirclePoint& p);
  static CirclePoint from_csv(const std::vector<std::string>& f, std::size_t& pos);
};

template <>
struct PointCodec<SymbolSeq> {
  static Json to_json(const SymbolSeq& p);
  static SymbolSeq from_json(const Json& j);
  static std::vector<std::string> csv_header() { return {"lo", "window", "left_tail", "right_tail"}; }
  static std::vector<std::string> csv_fields(const SymbolSeq& p);
  /// Alphabet size is not part of the CSV row and must be supplied.
  static SymbolSeq from_csv(const std::vector<std::string>& f, std::size_t& pos, int alphabet = 2);
};

template <>
struct PointCodec<CubeSeq> {
  static Json to_json(const CubeSeq& p);
  static CubeSeq from_json(const Json& j);
  static std::vector<std::string> csv_header() { return {"lo", "window", "left_tail", "right_tail"}; }
  static std::vector<std::string> csv_fields(const CubeSeq& p);
  static CubeSeq from_csv(const std::vector<std::string>& f, std::size_t& pos);
};

template <class L, class R>
struct PointCodec<ProductPoint<L, R>> {
  using P = ProductPoint<L, R>;
  static Json to_json(const P& p) { return {{"left", PointCodec<L>::to_json(p.left)}, {"right", PointCodec<R>::to_json(p.right)}}; }
  static P from_json(const Json& j) { return {PointCodec<L>::from_json(j.at("left")), PointCodec<R>::from_json(j.at("right"))}; }
  static std::vector<std::string> csv_header() {
    auto h = PointCodec<L>::csv_header();
    for (auto& c : PointCodec<R>::csv_header()) h.push_back(std::ranges::count(h, c) ? "right_" + c : c);
    return h;
  }
  static std::vector<std::string> csv_fields(const P& p) {
    auto f = PointCodec<L>::csv_fields(p.left);
    for (auto& c : PointCodec<R>::csv_fields(p.right)) f.push_back(c);
    return f;
  }
  static P from_csv(const std::vector<std::string>& f, std::size_t& pos) {
    auto l = PointCodec<L>::from_csv(f, pos);
    auto r = PointCodec<R>::from_csv(f, pos);
    return {std::move(l), std::move(r)};
  }
};

template <class P>
Json point_to_json(const P& p) { return PointCodec<P>::to_json(p); }

/// Joins fields with commas and a trailing newline.
std::string csv_line(const std::vector<std::string>& fields);

}  // namespace shadowdyn
