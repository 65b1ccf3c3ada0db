#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace bitopo {

/// Arbitrary-precision natural number. Codes nest several pairings deep, so
/// fixed-width integers overflow almost immediately.
using Nat = boost::multiprecision::cpp_int;

/// Step budget for every unbounded search.
using Fuel = std::uint64_t;

/// Cantor pairing (a+b)(a+b+1)/2 + b.
Nat pair(const Nat& a, const Nat& b);
std::pair<Nat, Nat> unpair(const Nat& n);

/// Left-nested tupling: <a1,...,an> = <<a1,...,a(n-1)>, an>. Requires n >= 2.
Nat tuple(std::span<const Nat> xs);
Nat tuple(std::initializer_list<Nat> xs);
std::vector<Nat> untuple(const Nat& n, std::size_t len);

/// Checked narrowing; throws std::out_of_range when n does not fit.
std::uint64_t to_u64(const Nat& n);

}  // namespace bitopo
