#include "bitopo/dyadic.hpp"

#include <charconv>
#include <mutex>
#include <unordered_map>

#include <boost/container_hash/hash.hpp>
#include <ostream>
#include <stdexcept>

namespace bitopo {

namespace {

constexpr std::int64_t kExponentLimit = std::int64_t{1} << 40;

Integer parse_integer(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("dyadic: empty integer");
  bool negative = false;
  if (s.front() == '-' || s.front() == '+') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) throw std::invalid_argument("dyadic: missing digits");
  Integer v = 0;
  for (char ch : s) {
    if (ch < '0' || ch > '9') throw std::invalid_argument("dyadic: bad digit in '" + std::string(s) + "'");
    v = v * 10 + (ch - '0');
  }
  return negative ? Integer(-v) : v;
}

std::int64_t parse_exponent(std::string_view s) {
  std::int64_t v = 0;
  const char* first = s.data();
  if (!s.empty() && s.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || v > kExponentLimit || v < -kExponentLimit)
    throw std::invalid_argument("dyadic: bad exponent '" + std::string(s) + "'");
  return v;
}

// x and y aligned to the smaller exponent.
std::pair<Integer, Integer> aligned(const Dyadic& x, const Dyadic& y) {
  const auto e = std::min(x.exponent(), y.exponent());
  return {x.mantissa() << static_cast<unsigned>(x.exponent() - e),
          y.mantissa() << static_cast<unsigned>(y.exponent() - e)};
}

}  // namespace

Dyadic::Dyadic(long long value) : mantissa_(value), exponent_(0) { normalize(); }

Dyadic::Dyadic(Integer mantissa, std::int64_t exponent)
    : mantissa_(std::move(mantissa)), exponent_(exponent) {
  normalize();
}

void Dyadic::normalize() {
  if (mantissa_.is_zero()) {
    exponent_ = 0;
    return;
  }
  const auto shift = boost::multiprecision::lsb(boost::multiprecision::abs(mantissa_));
  if (shift > 0) {
    mantissa_ >>= shift;  // exact: the low bits are zero
    exponent_ += static_cast<std::int64_t>(shift);
  }
}

Dyadic Dyadic::pow2(std::int64_t k) { return Dyadic(Integer(1), k); }

Dyadic Dyadic::parse(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (auto star = text.find('*'); star != std::string_view::npos) {
    auto rest = text.substr(star + 1);
    if (rest.substr(0, 2) != "2^") throw std::invalid_argument("dyadic: expected '*2^' in '" + std::string(text) + "'");
    return Dyadic(parse_integer(text.substr(0, star)), parse_exponent(rest.substr(2)));
  }
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto rest = text.substr(slash + 1);
    if (rest.substr(0, 2) == "2^") return Dyadic(parse_integer(text.substr(0, slash)), -parse_exponent(rest.substr(2)));
    const Integer den = parse_integer(rest);
    if (den <= 0 || (den & (den - 1)) != 0) throw std::invalid_argument("dyadic: denominator must be a power of two");
    const auto k = static_cast<std::int64_t>(boost::multiprecision::msb(den));
    return Dyadic(parse_integer(text.substr(0, slash)), -k);
  }
  return Dyadic(parse_integer(text), 0);
}

Dyadic operator+(const Dyadic& x, const Dyadic& y) {
  const auto e = std::min(x.exponent(), y.exponent());
  const auto dx = x.exponent() - e, dy = y.exponent() - e;
  if (dx < 48 && dy < 48 && x.mantissa().backend().size() == 1 && y.mantissa().backend().size() == 1) {
    const auto mx = static_cast<std::int64_t>(x.mantissa().backend().limbs()[0]);
    const auto my = static_cast<std::int64_t>(y.mantissa().backend().limbs()[0]);
    if (mx >= 0 && my >= 0 && mx < (std::int64_t{1} << 62) && my < (std::int64_t{1} << 62)) {
      const __int128 sum = static_cast<__int128>(x.sign() * mx) * (__int128{1} << dx) +
                           static_cast<__int128>(y.sign() * my) * (__int128{1} << dy);
      if (sum > -(__int128{1} << 62) && sum < (__int128{1} << 62))
        return Dyadic(Integer(static_cast<long long>(sum)), e);
    }
  }
  auto [a, b] = aligned(x, y);
  return Dyadic(a + b, e);
}

Dyadic operator-(const Dyadic& x, const Dyadic& y) { return x + (-y); }

Dyadic operator*(const Dyadic& x, const Dyadic& y) {
  return Dyadic(x.mantissa() * y.mantissa(), x.exponent() + y.exponent());
}

Dyadic Dyadic::scaled(std::int64_t k) const { return Dyadic(mantissa_, exponent_ + k); }

std::strong_ordering operator<=>(const Dyadic& x, const Dyadic& y) {
  if (x.sign() != y.sign()) return x.sign() <=> y.sign();
  if (x.exponent() == y.exponent()) {
    const int c = x.mantissa().compare(y.mantissa());
    return c <=> 0;
  }
  auto [a, b] = aligned(x, y);
  const int c = a.compare(b);
  return c <=> 0;
}

Rational Dyadic::to_rational() const {
  if (exponent_ >= 0) return Rational(mantissa_ << static_cast<unsigned>(exponent_));
  return Rational(mantissa_, Integer(1) << static_cast<unsigned>(-exponent_));
}

std::string Dyadic::to_string() const {
  if (exponent_ >= 0 && exponent_ < 64) return Integer(mantissa_ << static_cast<unsigned>(exponent_)).str();
  return mantissa_.str() + "*2^" + std::to_string(exponent_);
}

Dyadic min(const Dyadic& x, const Dyadic& y) { return y < x ? y : x; }
Dyadic max(const Dyadic& x, const Dyadic& y) { return x < y ? y : x; }

std::ostream& operator<<(std::ostream& os, const Dyadic& d) { return os << d.to_string(); }

Nat encode(const Dyadic& d) {
  const Nat magnitude = boost::multiprecision::abs(d.mantissa());
  const Nat a = d.sign() >= 0 ? magnitude : Nat(0);
  const Nat b = d.sign() < 0 ? magnitude : Nat(0);
  const Nat c = d.exponent() > 0 ? Nat(d.exponent()) : Nat(0);
  const Nat e = d.exponent() < 0 ? Nat(-d.exponent()) : Nat(0);
  return tuple({a, b, c, e});
}

Dyadic dyadic_decode(const Nat& code) {
  // Decoding is pure and codes recur constantly in nested searches.
  static std::mutex mutex;
  static std::unordered_map<Nat, Dyadic, boost::hash<Nat>> memo;
  {
    std::lock_guard lock(mutex);
    if (auto it = memo.find(code); it != memo.end()) return it->second;
  }
  const auto parts = untuple(code, 4);
  const Nat shift = parts[2] - parts[3];
  if (shift > kExponentLimit || shift < -kExponentLimit)
    throw std::out_of_range("dyadic_decode: exponent out of range");
  Dyadic y(parts[0] - parts[1], shift.convert_to<std::int64_t>());
  std::lock_guard lock(mutex);
  if (memo.size() >= (std::size_t{1} << 18)) memo.clear();
  memo.emplace(code, y);
  return y;
}

}  // namespace bitopo
