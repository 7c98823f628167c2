#include "shadowdyn/serialize.hpp"

#include <charconv>
#include <stdexcept>

namespace shadowdyn {

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw std::invalid_argument("not a number: '" + std::string(s) + "'");
  return v;
}

long long parse_int(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  long long v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size())
    throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
  return v;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.emplace_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

std::string csv_line(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) line += ',';
    line += fields[i];
  }
  line += '\n';
  return line;
}

namespace {

const std::string& field(const std::vector<std::string>& f, std::size_t& pos) {
  if (pos >= f.size()) throw std::invalid_argument("CSV row has too few columns");
  return f[pos++];
}

template <class T, class Parse>
std::string join_words(const std::vector<T>& w, Parse fmt) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ' ';
    s += fmt(w[i]);
  }
  return s;
}

std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  for (auto& w : split(s, ' '))
    if (!w.empty()) out.push_back(w);
  if (out.empty()) throw std::invalid_argument("empty sequence word in CSV");
  return out;
}

std::vector<std::uint8_t> symbols(const Json& j) {
  std::vector<std::uint8_t> out;
  for (const auto& v : j) {
    const int s = v.get<int>();
    if (s < 0 || s > 255) throw std::invalid_argument("symbol out of range");
    out.push_back(static_cast<std::uint8_t>(s));
  }
  return out;
}

}  // namespace

Json PointCodec<TorusPoint>::to_json(const TorusPoint& p) {
  const auto d = p.as_doubles();
  return {{"u", d[0]}, {"v", d[1]}, {"u_hex", p.u.to_hex()}, {"v_hex", p.v.to_hex()}};
}

TorusPoint PointCodec<TorusPoint>::from_json(const Json& j) {
  if (j.contains("u_hex") && j.contains("v_hex"))
    return {Dyadic::from_hex(j.at("u_hex").get<std::string>()), Dyadic::from_hex(j.at("v_hex").get<std::string>())};
  return TorusPoint::from_doubles(j.at("u").get<double>(), j.at("v").get<double>());
}

std::vector<std::string> PointCodec<TorusPoint>::csv_fields(const TorusPoint& p) {
  const auto d = p.as_doubles();
  return {format_double(d[0]), format_double(d[1])};
}

TorusPoint PointCodec<TorusPoint>::from_csv(const std::vector<std::string>& f, std::size_t& pos) {
  const double u = parse_double(field(f, pos));
  const double v = parse_double(field(f, pos));
  return TorusPoint::from_doubles(u, v);
}

Json PointCodec<CirclePoint>::to_json(const CirclePoint& p) { return {{"t", p.t}}; }
CirclePoint PointCodec<CirclePoint>::from_json(const Json& j) { return {wrap01(j.at("t").get<double>())}; }
std::vector<std::string> PointCodec<CirclePoint>::csv_fields(const CirclePoint& p) { return {format_double(p.t)}; }
CirclePoint PointCodec<CirclePoint>::from_csv(const std::vector<std::string>& f, std::size_t& pos) {
  return {wrap01(parse_double(field(f, pos)))};
}

Json PointCodec<SymbolSeq>::to_json(const SymbolSeq& p) {
  auto ints = [](const std::vector<std::uint8_t>& w) {
    Json a = Json::array();
    for (auto s : w) a.push_back(static_cast<int>(s));
    return a;
  };
  return {{"lo", p.lo()}, {"window", ints(p.window())}, {"left_tail", ints(p.left_tail())},
          {"right_tail", ints(p.right_tail())}, {"alphabet", p.alphabet()}};
}

SymbolSeq PointCodec<SymbolSeq>::from_json(const Json& j) {
  return SymbolSeq(j.at("lo").get<std::int64_t>(), symbols(j.at("window")), symbols(j.at("left_tail")),
                   symbols(j.at("right_tail")), j.value("alphabet", 2));
}

std::vector<std::string> PointCodec<SymbolSeq>::csv_fields(const SymbolSeq& p) {
  auto fmt = [](std::uint8_t s) { return std::to_string(static_cast<int>(s)); };
  return {std::to_string(p.lo()), join_words(p.window(), fmt), join_words(p.left_tail(), fmt), join_words(p.right_tail(), fmt)};
}

SymbolSeq PointCodec<SymbolSeq>::from_csv(const std::vector<std::string>& f, std::size_t& pos, int alphabet) {
  const auto lo = parse_int(field(f, pos));
  auto parse_word = [](const std::string& s) {
    std::vector<std::uint8_t> w;
    for (auto& t : words(s)) {
      const auto v = parse_int(t);
      if (v < 0 || v > 255) throw std::invalid_argument("symbol out of range");
      w.push_back(static_cast<std::uint8_t>(v));
    }
    return w;
  };
  auto window = parse_word(field(f, pos));
  auto left = parse_word(field(f, pos));
  auto right = parse_word(field(f, pos));
  return SymbolSeq(lo, std::move(window), std::move(left), std::move(right), alphabet);
}

Json PointCodec<CubeSeq>::to_json(const CubeSeq& p) {
  return {{"lo", p.lo()}, {"window", p.window()}, {"left_tail", p.left_tail().front()}, {"right_tail", p.right_tail().front()}};
}

CubeSeq PointCodec<CubeSeq>::from_json(const Json& j) {
  return CubeSeq(j.at("lo").get<std::int64_t>(), j.at("window").get<std::vector<double>>(), {j.at("left_tail").get<double>()},
                 {j.at("right_tail").get<double>()});
}

std::vector<std::string> PointCodec<CubeSeq>::csv_fields(const CubeSeq& p) {
  return {std::to_string(p.lo()), join_words(p.window(), format_double), format_double(p.left_tail().front()),
          format_double(p.right_tail().front())};
}

CubeSeq PointCodec<CubeSeq>::from_csv(const std::vector<std::string>& f, std::size_t& pos) {
  const auto lo = parse_int(field(f, pos));
  std::vector<double> window;
  for (auto& t : words(field(f, pos))) window.push_back(parse_double(t));
  const double left = parse_double(field(f, pos));
  const double right = parse_double(field(f, pos));
  return CubeSeq(lo, std::move(window), {left}, {right});
}

}  // namespace shadowdyn
