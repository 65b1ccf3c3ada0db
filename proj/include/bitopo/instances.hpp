#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "bitopo/quasimetric.hpp"
#include "bitopo/report.hpp"

namespace bitopo {

/// A bi-topological space induced by a computable quasi-metric d on a dense
/// base: tau = tau_d (left probes), sigma = tau_{d^c} (right probes).
struct QmInstance {
  std::string name;
  std::shared_ptr<Registry> registry;
  std::shared_ptr<PointTable> table;
  BiSpace bi;

  const QuasiMetric& metric() const { return table->metric(); }
  QuasiMetric metric(Side side) const { return side == Side::left ? metric() : conjugate(metric()); }
  const Space& space(Side side) const { return side == Side::left ? bi.tau : bi.sigma; }
  RegularityWitness regularity(Side side, Fuel fuel = 100000) const;
  /// Point index of a carrier value in the dense base.
  Nat point(const Dyadic& y) const { return PointTable::base_index(metric().base_code(y)); }
  /// Basis code ball(y, 2^-e) of the given side.
  Nat ball(Side side, const Dyadic& center, std::int64_t e) const { return pair(metric(side).base_code(center), e); }
};

/// (R_c, U, L): d = d_U over the dyadic base beta_<a,b,c,e> = (a-b)*2^(c-e).
QmInstance make_reals(std::shared_ptr<Registry> registry = std::make_shared<Registry>());
/// Sierpinski space {bot, top}, encoded as carrier values 0 and 1, with
/// beta_0 = bot and beta_a = top otherwise.
QmInstance make_sierpinski(std::shared_ptr<Registry> registry = std::make_shared<Registry>());

/// Dense order of the dyadic base, coarse and small values first. Each dyadic
/// appears exactly once.
Enumerator dyadic_base_order();

/// Registers k -> code of seq(k).
Code register_sequence(Registry& registry, std::function<Dyadic(std::uint64_t)> seq, std::string name);

/// Real point bracketed by a nondecreasing lower and nonincreasing upper
/// dyadic sequence (codes from register_sequence) with gap tending to 0.
Nat make_creal(const QmInstance& reals, Code lower, Code upper, std::optional<Dyadic> truth = std::nullopt);
/// lower_k = v - 2^-k, upper_k = v + 2^-k.
Nat creal_around(const QmInstance& reals, const Dyadic& v);

/// Sierpinski point that is top iff apply(p, 0, .) ever confirms. It is only
/// weakly computable: no right probe.
Nat halting_point(const QmInstance& sierpinski, Code p, std::optional<bool> truth = std::nullopt);

/// Programs for halting probes: confirms at input 0 once fuel reaches `steps`.
Code halting_after(Registry& registry, std::uint64_t steps);
Code never_halting(Registry& registry);

/// Seeded sample of point indices with known values: dense base points plus
/// (for the reals) bracketed points, (for Sierpinski) halting points.
std::vector<Nat> sample_points(const QmInstance& inst, std::mt19937_64& rng, std::size_t count);
/// Seeded basis code of `side` whose ball contains y.
Nat ball_containing(const QmInstance& inst, Side side, const Dyadic& y, std::mt19937_64& rng);

/// The Sierpinski tables: d, d^c, basis, and strong inclusion at equal radii.
Json sierpinski_tables(const QmInstance& sierpinski);

}  // namespace bitopo
