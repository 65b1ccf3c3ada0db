#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "bitopo/nat.hpp"

namespace bitopo {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact number mantissa * 2^exponent, kept normalized: the mantissa is odd
/// or zero, and zero carries exponent 0. Every operation here is exact.
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(long long value);  // NOLINT(google-explicit-constructor)
  Dyadic(Integer mantissa, std::int64_t exponent);

  /// 2^k.
  static Dyadic pow2(std::int64_t k);
  /// Parses "m", "m*2^e" (e may be negative), or "m/2^k".
  static Dyadic parse(std::string_view text);

  const Integer& mantissa() const { return mantissa_; }
  std::int64_t exponent() const { return exponent_; }
  int sign() const { return mantissa_.sign(); }
  bool is_zero() const { return mantissa_.is_zero(); }

  Dyadic operator-() const { return Dyadic(-mantissa_, exponent_); }
  friend Dyadic operator+(const Dyadic& x, const Dyadic& y);
  friend Dyadic operator-(const Dyadic& x, const Dyadic& y);
  friend Dyadic operator*(const Dyadic& x, const Dyadic& y);
  /// Multiplication by 2^k.
  Dyadic scaled(std::int64_t k) const;

  friend std::strong_ordering operator<=>(const Dyadic& x, const Dyadic& y);
  friend bool operator==(const Dyadic& x, const Dyadic& y) = default;

  Rational to_rational() const;
  std::string to_string() const;

 private:
  void normalize();

  Integer mantissa_ = 0;
  std::int64_t exponent_ = 0;
};

Dyadic min(const Dyadic& x, const Dyadic& y);
Dyadic max(const Dyadic& x, const Dyadic& y);
std::ostream& operator<<(std::ostream& os, const Dyadic& d);

/// Canonical code <a,b,c,e> with (a-b)*2^(c-e) = d; minimal in a, b, c and e.
Nat encode(const Dyadic& d);
/// (a-b)*2^(c-e) for <a,b,c,e> = untuple(code, 4). Throws std::out_of_range
/// when c-e is beyond +-2^40.
Dyadic dyadic_decode(const Nat& code);

}  // namespace bitopo
