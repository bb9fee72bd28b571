#pragma once

// Exact integer and rational types shared by every module.

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace riesz {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const BigInt& v) { return v.str(); }

inline std::string to_string(const Rational& v) {
  const BigInt num = boost::multiprecision::numerator(v);
  const BigInt den = boost::multiprecision::denominator(v);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline std::optional<std::int64_t> to_int64(const BigInt& v) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min()) {
    return std::nullopt;
  }
  return static_cast<std::int64_t>(v);
}

inline std::optional<std::uint64_t> to_uint64(const BigInt& v) {
  if (v < 0 || v > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  return static_cast<std::uint64_t>(v);
}

// Natural log of |v| for v != 0, valid far beyond the double range.
inline long double log_abs(const BigInt& v) {
  const BigInt a = boost::multiprecision::abs(v);
  const std::size_t bits = boost::multiprecision::msb(a) + 1;
  if (bits <= 62) return std::log(static_cast<long double>(a));
  const std::size_t shift = bits - 62;
  const auto top = static_cast<long double>(static_cast<std::uint64_t>(a >> shift));
  return std::log(top) + static_cast<long double>(shift) * std::log(2.0L);
}

// Closest long double, saturating to +-inf beyond the exponent range.
inline long double to_long_double(const BigInt& v) {
  if (v == 0) return 0.0L;
  const BigInt a = boost::multiprecision::abs(v);
  const std::size_t bits = boost::multiprecision::msb(a) + 1;
  long double mag;
  if (bits <= 62) {
    mag = static_cast<long double>(static_cast<std::uint64_t>(a));
  } else {
    const std::size_t shift = bits - 62;
    const auto top = static_cast<long double>(static_cast<std::uint64_t>(a >> shift));
    mag = std::ldexp(top, static_cast<int>(std::min<std::size_t>(shift, 1 << 20)));
  }
  return v < 0 ? -mag : mag;
}

inline double to_double(const BigInt& v) { return static_cast<double>(to_long_double(v)); }

inline long double to_long_double(const Rational& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  if (num == 0) return 0.0L;
  // Keep the top 63 bits of each side and restore the binary exponent.
  const auto top = [](const BigInt& a, long& exp2) {
    const std::size_t bits = boost::multiprecision::msb(a) + 1;
    const std::size_t shift = bits > 63 ? bits - 63 : 0;
    exp2 = static_cast<long>(shift);
    return static_cast<long double>(static_cast<std::uint64_t>(a >> shift));
  };
  long en = 0, ed = 0;
  const long double mn = top(boost::multiprecision::abs(num), en);
  const long double md = top(den, ed);
  const long double mag = std::ldexp(mn / md, static_cast<int>(en - ed));
  return num < 0 ? -mag : mag;
}

inline double to_double(const Rational& q) { return static_cast<double>(to_long_double(q)); }

}  // namespace riesz
