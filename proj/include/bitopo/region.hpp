#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bitopo/dyadic.hpp"

namespace bitopo {

/// Exact oracle set: the open interval (lo, hi) (a missing bound is infinite),
/// intersected with a finite carrier when one is given.
struct Region {
  std::optional<Dyadic> lo;
  std::optional<Dyadic> hi;
  std::shared_ptr<const std::vector<Dyadic>> carrier;

  static Region everything(std::shared_ptr<const std::vector<Dyadic>> carrier = {});
  static Region above(Dyadic lo, std::shared_ptr<const std::vector<Dyadic>> carrier = {});
  static Region below(Dyadic hi, std::shared_ptr<const std::vector<Dyadic>> carrier = {});

  bool in_carrier(const Dyadic& y) const;
  bool contains(const Dyadic& y) const;
  bool empty() const;
  bool subset_of(const Region& other) const;
  bool disjoint(const Region& other) const;
  Region intersect(const Region& other) const;

  /// Carrier points outside the region: the boundary points, then points at
  /// shrinking distances beyond them, then seeded far points.
  std::vector<Dyadic> complement_samples(std::mt19937_64& rng, std::size_t count) const;
  /// Carrier points inside the region, chosen the same way.
  std::vector<Dyadic> interior_samples(std::mt19937_64& rng, std::size_t count) const;

  /// "(lo,inf)", "(-inf,hi)", "(lo,hi)", "(-inf,inf)"; finite carriers are
  /// listed as "{0,1}".
  std::string to_string() const;
};

/// Parses "(lo,inf)", "(-inf,hi)" or "(lo,hi)" with dyadic endpoints.
Region parse_region(const std::string& text);

/// Seeded dyadic in [-span, span] with at most `bits` fractional bits.
Dyadic random_dyadic(std::mt19937_64& rng, int span, int bits);

}  // namespace bitopo
