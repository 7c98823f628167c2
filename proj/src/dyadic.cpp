#include "shadowdyn/dyadic.hpp"

#include <cmath>
#include <stdexcept>

namespace shadowdyn {

Dyadic Dyadic::from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("Dyadic::from_double: non-finite input");
  if (x < 0) return -from_double(-x);
  double r = x - std::floor(x);
  if (r >= 1.0) r = 0.0;
  Dyadic d;
  if (r == 0.0) return d;
  int e = 0;
  const double m = std::frexp(r, &e);  // r = m * 2^e, m in [0.5, 1)
  const auto mant = static_cast<std::uint64_t>(std::ldexp(m, 53));
  // r * 2^512 = mant * 2^(459 + e)
  const int shift = 459 + e;
  if (shift < 0) {
    if (shift > -64) d.limbs_[0] = mant >> (-shift);
    return d;
  }
  const int limb = shift / 64;
  const int bit = shift % 64;
  d.limbs_[limb] |= mant << bit;
  if (bit != 0 && limb + 1 < kLimbs) d.limbs_[limb + 1] |= mant >> (64 - bit);
  return d;
}

Dyadic Dyadic::from_hex(std::string_view hex) {
  if (hex.size() != static_cast<std::size_t>(kBits / 4)) {
    throw std::invalid_argument("Dyadic::from_hex: expected " + std::to_string(kBits / 4) + " hex digits");
  }
  Dyadic d;
  for (std::size_t i = 0; i < hex.size(); ++i) {
    const char c = hex[i];
    std::uint64_t nib = 0;
    if (c >= '0' && c <= '9') nib = static_cast<std::uint64_t>(c - '0');
    else if (c >= 'a' && c <= 'f') nib = static_cast<std::uint64_t>(c - 'a' + 10);
    else if (c >= 'A' && c <= 'F') nib = static_cast<std::uint64_t>(c - 'A' + 10);
    else throw std::invalid_argument("Dyadic::from_hex: bad digit");
    const std::size_t pos = hex.size() - 1 - i;  // nibble index from the least significant end
    d.limbs_[pos / 16] |= nib << (4 * (pos % 16));
  }
  return d;
}

double Dyadic::to_double() const {
  return std::ldexp(static_cast<double>(limbs_[7]), -64) + std::ldexp(static_cast<double>(limbs_[6]), -128) +
         std::ldexp(static_cast<double>(limbs_[5]), -192);
}

double Dyadic::to_signed_double() const {
  if (!negative_lift()) return to_double();
  return -(-*this).to_double();
}

std::string Dyadic::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(kBits / 4, '0');
  for (std::size_t pos = 0; pos < out.size(); ++pos) {
    const std::uint64_t nib = (limbs_[pos / 16] >> (4 * (pos % 16))) & 0xF;
    out[out.size() - 1 - pos] = kDigits[nib];
  }
  return out;
}

bool Dyadic::is_zero() const {
  for (auto l : limbs_)
    if (l != 0) return false;
  return true;
}

Dyadic Dyadic::operator-() const {
  Dyadic r;
  unsigned carry = 1;
  for (int i = 0; i < kLimbs; ++i) {
    const std::uint64_t v = ~limbs_[i];
    r.limbs_[i] = v + carry;
    carry = (carry != 0 && r.limbs_[i] == 0) ? 1 : 0;
  }
  return r;
}

Dyadic& Dyadic::operator+=(const Dyadic& o) {
  unsigned __int128 carry = 0;
  for (int i = 0; i < kLimbs; ++i) {
    const unsigned __int128 s = static_cast<unsigned __int128>(limbs_[i]) + o.limbs_[i] + carry;
    limbs_[i] = static_cast<std::uint64_t>(s);
    carry = s >> 64;
  }
  return *this;
}

Dyadic& Dyadic::operator-=(const Dyadic& o) { return *this += -o; }

Dyadic Dyadic::times(std::int64_t k) const {
  const bool neg = k < 0;
  const std::uint64_t mag = neg ? static_cast<std::uint64_t>(-(k + 1)) + 1 : static_cast<std::uint64_t>(k);
  Dyadic r;
  unsigned __int128 carry = 0;
  for (int i = 0; i < kLimbs; ++i) {
    const unsigned __int128 p = static_cast<unsigned __int128>(limbs_[i]) * mag + carry;
    r.limbs_[i] = static_cast<std::uint64_t>(p);
    carry = p >> 64;
  }
  return neg ? -r : r;
}

double circle_distance(const Dyadic& a, const Dyadic& b) { return std::fabs((a - b).to_signed_double()); }

}  // namespace shadowdyn
