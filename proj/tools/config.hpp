#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shadowdyn/certificate.hpp"

namespace shadowdyn::cli {

/// Every knob of a run. Values come from a flat key=value file and are
/// overridden by flags of the same name.
struct RunConfig {
  std::string command;
  std::string system = "cat";
  std::optional<double> eps;
  std::optional<double> delta;
  int kmax = 4;
  std::int64_t horizon = 50;
  std::string resolution;
  std::optional<int> samples;
  std::optional<std::uint64_t> seed;
  std::string out = "shadowdyn_out";
  int threads = 0;

  std::string input;
  std::string point;
  std::string points;
  std::vector<double> radii;
  std::string direction = "unstable";
  std::int64_t length = 100;
  double arc_center = 0.25;
  double arc_length = 1e-3;
  std::int64_t span = 8;
  double step = 1e-3;
  int alphabet = 2;
  double angle = 0.0;
  std::int64_t edge_budget = 200'000'000;

  Json to_json() const;
  std::uint64_t require_seed() const;
  double require_eps() const;
};

std::vector<int> parse_resolution(const std::string& text, int dimension);
std::vector<double> parse_list(const std::string& text);
/// Splits on ';' and trims blanks.
std::vector<std::string> split_points(const std::string& text);
std::string read_file(const std::string& path);
void write_file(const std::string& dir, const std::string& name, const std::string& content);

}  // namespace shadowdyn::cli
