#include "shadowdyn/sequence.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

namespace shadowdyn {

double seq_dist(const SymbolSeq& x, const SymbolSeq& y) {
  if (x.alphabet() != y.alphabet()) throw std::invalid_argument("seq_dist: alphabet mismatch");
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for_each_deciding_index(x, y, [&](std::int64_t i, std::uint8_t a, std::uint8_t b) {
    if (a != b) best = std::min(best, std::abs(i));
  });
  if (best == std::numeric_limits<std::int64_t>::max()) return 0.0;
  return std::ldexp(1.0, -static_cast<int>(std::min<std::int64_t>(best, 1100)));
}

double cube_dist(const CubeSeq& x, const CubeSeq& y) {
  double sup = 0.0;
  for_each_deciding_index(x, y, [&](std::int64_t i, double a, double b) {
    const double w = std::ldexp(std::fabs(a - b), -static_cast<int>(std::min<std::int64_t>(std::abs(i), 1100)));
    sup = std::max(sup, w);
  });
  return sup;
}

int first_free_coordinate(double r) {
  if (!(r > 0)) throw std::invalid_argument("first_free_coordinate: radius must be positive");
  int m = 0;
  while (std::ldexp(1.0, -m) >= r) ++m;
  return m;
}

FullShift::FullShift(int alphabet, int direction) : alphabet_(alphabet), direction_(direction) {
  if (alphabet < 2 || alphabet > 256) throw std::invalid_argument("FullShift: alphabet must be in [2, 256]");
  if (direction != 1 && direction != -1) throw std::invalid_argument("FullShift: direction must be +1 or -1");
}

namespace {

std::vector<std::uint8_t> random_word(Rng& rng, std::size_t len, int alphabet) {
  std::vector<std::uint8_t> w(len);
  for (auto& s : w) s = static_cast<std::uint8_t>(rng.below(static_cast<std::uint64_t>(alphabet)));
  return w;
}

}  // namespace

SymbolSeq FullShift::sample(Rng& rng) const {
  auto window = random_word(rng, 17, alphabet_);
  auto left = random_word(rng, 1 + rng.below(3), alphabet_);
  auto right = random_word(rng, 1 + rng.below(3), alphabet_);
  return SymbolSeq(-8, std::move(window), std::move(left), std::move(right), alphabet_);
}

SymbolSeq FullShift::sample_near(const SymbolSeq& p, double r, Rng& rng) const {
  const int m = first_free_coordinate(r);
  SymbolSeq q = p.widened_to(-m - 3, m + 3);
  for (int k = m; k <= m + 3; ++k) {
    q = q.with(k, static_cast<std::uint8_t>(rng.below(static_cast<std::uint64_t>(alphabet_))));
    q = q.with(-k, static_cast<std::uint8_t>(rng.below(static_cast<std::uint64_t>(alphabet_))));
  }
  return q;
}

CubeShift::CubeShift(int direction) : direction_(direction) {
  if (direction != 1 && direction != -1) throw std::invalid_argument("CubeShift: direction must be +1 or -1");
}

CubeSeq CubeShift::sample(Rng& rng) const {
  std::vector<double> window(17);
  for (auto& x : window) x = rng.uniform();
  const double left = rng.uniform();
  const double right = rng.uniform();
  return CubeSeq(-8, std::move(window), {left}, {right});
}

CubeSeq CubeShift::sample_near(const CubeSeq& p, double r, Rng& rng) const {
  CubeSeq q = p.widened_to(-4, 4);
  for (std::int64_t i = -4; i <= 4; ++i) {
    const double span = 0.999 * r * std::ldexp(1.0, static_cast<int>(std::abs(i)));
    const double v = std::clamp(q.at(i) + rng.uniform(-span, span), 0.0, 1.0);
    q = q.with(i, v);
  }
  return q;
}

}  // namespace shadowdyn
