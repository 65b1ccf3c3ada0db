#include "bitopo/nat.hpp"

#include <cmath>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <stdexcept>

#include <boost/container_hash/hash.hpp>

namespace bitopo {

namespace {

using u128 = unsigned __int128;

u128 tri(u128 w) { return w * (w + 1) / 2; }

// Large codes come from nested tuples and are decoded over and over; pair
// records what it built so the matching unpair is a lookup.
struct UnpairMemo {
  std::mutex mutex;
  std::unordered_map<Nat, std::pair<Nat, Nat>, boost::hash<Nat>> map;

  std::optional<std::pair<Nat, Nat>> find(const Nat& n) {
    std::lock_guard lock(mutex);
    if (auto it = map.find(n); it != map.end()) return it->second;
    return std::nullopt;
  }
  void put(const Nat& n, const Nat& a, const Nat& b) {
    std::lock_guard lock(mutex);
    if (map.size() >= (std::size_t{1} << 18)) map.clear();
    map.try_emplace(n, a, b);
  }
};

UnpairMemo& unpair_memo() {
  static UnpairMemo memo;
  return memo;
}

// Nonnegative n below 2^120, read from its limbs.
std::optional<u128> small(const Nat& n) {
  const auto& be = n.backend();
  static_assert(sizeof(*be.limbs()) == 8);
  if (be.size() == 1) return static_cast<u128>(be.limbs()[0]);
  if (be.size() == 2 && be.limbs()[1] < (std::uint64_t{1} << 56))
    return (static_cast<u128>(be.limbs()[1]) << 64) | be.limbs()[0];
  return std::nullopt;
}

Nat from_u128(u128 v) {
  const auto hi = static_cast<std::uint64_t>(v >> 64);
  const auto lo = static_cast<std::uint64_t>(v);
  if (hi == 0) return Nat(lo);
  return (Nat(hi) << 64) | Nat(lo);
}

u128 triangular_root(u128 v) {
  auto w = static_cast<u128>((std::sqrt(8.0L * static_cast<long double>(v) + 1.0L) - 1.0L) / 2.0L);
  while (w > 0 && tri(w) > v) --w;
  while (tri(w + 1) <= v) ++w;
  return w;
}

// Largest w with w(w+1)/2 <= n.
Nat triangular_root(const Nat& n) {
  Nat w = (boost::multiprecision::sqrt(Nat(8 * n + 1)) - 1) / 2;
  while (w * (w + 1) / 2 > n) --w;
  while ((w + 1) * (w + 2) / 2 <= n) ++w;
  return w;
}

}  // namespace

Nat pair(const Nat& a, const Nat& b) {
  if (a < 0 || b < 0) throw std::invalid_argument("pair: negative argument");
  const auto sa = small(a), sb = small(b);
  if (sa && sb && *sa < (u128(1) << 62) && *sb < (u128(1) << 62)) return from_u128(tri(*sa + *sb) + *sb);
  const Nat s = a + b;
  Nat n = s * (s + 1) / 2 + b;
  unpair_memo().put(n, a, b);
  return n;
}

std::pair<Nat, Nat> unpair(const Nat& n) {
  if (n < 0) throw std::invalid_argument("unpair: negative argument");
  if (const auto v = small(n)) {
    const u128 w = triangular_root(*v);
    const u128 b = *v - tri(w);
    return {from_u128(w - b), from_u128(b)};
  }
  if (auto hit = unpair_memo().find(n)) return *hit;
  const Nat w = triangular_root(n);
  const Nat b = n - w * (w + 1) / 2;
  unpair_memo().put(n, w - b, b);
  return {w - b, b};
}

Nat tuple(std::span<const Nat> xs) {
  if (xs.size() < 2) throw std::invalid_argument("tuple: length must be at least 2");
  Nat acc = pair(xs[0], xs[1]);
  for (std::size_t k = 2; k < xs.size(); ++k) acc = pair(acc, xs[k]);
  return acc;
}

Nat tuple(std::initializer_list<Nat> xs) {
  return tuple(std::span<const Nat>(xs.begin(), xs.size()));
}

std::vector<Nat> untuple(const Nat& n, std::size_t len) {
  if (len < 2) throw std::invalid_argument("untuple: length must be at least 2");
  std::vector<Nat> out(len);
  Nat rest = n;
  for (std::size_t k = len - 1; k >= 1; --k) {
    auto [head, last] = unpair(rest);
    out[k] = std::move(last);
    rest = std::move(head);
  }
  out[0] = std::move(rest);
  return out;
}

std::uint64_t to_u64(const Nat& n) {
  if (n < 0 || n > std::numeric_limits<std::uint64_t>::max())
    throw std::out_of_range("natural does not fit in 64 bits");
  return n.convert_to<std::uint64_t>();
}

}  // namespace bitopo
