#include "config.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "shadowdyn/serialize.hpp"

namespace shadowdyn::cli {

namespace {

template <class T>
Json opt(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

}  // namespace

Json RunConfig::to_json() const {
  return {{"command", command},       {"system", system},         {"eps", opt(eps)},         {"delta", opt(delta)},
          {"kmax", kmax},             {"horizon", horizon},       {"resolution", resolution}, {"samples", opt(samples)},
          {"seed", opt(seed)},        {"out", out},               {"threads", threads},      {"input", input},
          {"point", point},           {"points", points},         {"radii", radii},          {"direction", direction},
          {"length", length},         {"arc_center", arc_center}, {"arc_length", arc_length}, {"span", span},
          {"step", step},             {"alphabet", alphabet},     {"angle", angle},          {"edge_budget", edge_budget}};
}

std::uint64_t RunConfig::require_seed() const {
  if (!seed) throw std::invalid_argument(command + ": --seed is required");
  return *seed;
}

double RunConfig::require_eps() const {
  if (!eps) throw std::invalid_argument(command + ": --eps is required");
  if (!(*eps > 0)) throw std::invalid_argument(command + ": --eps must be positive");
  return *eps;
}

std::vector<int> parse_resolution(const std::string& text, int dimension) {
  if (text.empty()) throw std::invalid_argument("chainrec: --resolution is required");
  std::string t = text;
  for (char& ch : t)
    if (ch == 'x' || ch == 'X') ch = ',';
  std::vector<int> res;
  for (const auto& f : split(t, ',')) {
    const long long v = parse_int(trim(f));
    if (v < 1 || v > (1 << 20)) throw std::invalid_argument("resolution entries must lie in [1, 2^20]");
    res.push_back(static_cast<int>(v));
  }
  if (res.size() == 1) res.assign(static_cast<std::size_t>(dimension), res[0]);
  if (static_cast<int>(res.size()) != dimension)
    throw std::invalid_argument("resolution has " + std::to_string(res.size()) + " axes, system has " + std::to_string(dimension));
  return res;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& f : split(text, ',')) out.push_back(parse_double(trim(f)));
  return out;
}

std::vector<std::string> split_points(const std::string& text) {
  std::vector<std::string> out;
  for (const auto& f : split(text, ';')) {
    auto t = trim(f);
    if (!t.empty()) out.push_back(std::move(t));
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& dir, const std::string& name, const std::string& content) {
  std::filesystem::create_directories(dir);
  const auto path = std::filesystem::path(dir) / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

}  // namespace shadowdyn::cli
