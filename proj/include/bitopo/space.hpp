#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bitopo/enumerator.hpp"
#include "bitopo/numbering.hpp"
#include "bitopo/region.hpp"
#include "bitopo/registry.hpp"
#include "bitopo/report.hpp"

namespace bitopo {

/// Exact ground truth for an instance space. Only tests and checkers consult
/// it; the effective operations never do.
struct SpaceOracle {
  std::function<std::optional<Dyadic>(const Nat&)> value;  // carrier value of point i
  std::function<Region(const Nat&)> region;                // B_n as a set
  std::function<Nat(const Dyadic&)> point_of;              // dense point index of a carrier value
  std::function<std::string(const Nat&)> render;           // human form of basis code n
};

/// Effective topological space: a total basis numbering B (every natural is a
/// basis code), a c.e. strong inclusion, the membership set L and a point
/// numbering.
struct Space {
  std::string name;
  PairTest member;    // (i, n): x_i in B_n, i.e. <i,n> in L
  PairTest precedes;  // (m, n): m strongly included in n
  /// Codes n with x_i in B_n, complete for the L-row of i and ordered so that
  /// small neighbourhoods show up early.
  std::function<Enumerator(const Nat&)> neighbourhood;
  /// Codes m with m strongly included in n.
  std::function<Enumerator(const Nat&)> refine;
  /// k(a): point index of the a-th dense base element. Empty when the space is
  /// not computably separable.
  std::function<Nat(const Nat&)> dense;
  Enumerator dense_order;
  /// Limit passing: normed-enumeration code -> point index.
  std::optional<Code> pt;
  std::shared_ptr<Registry> registry;
  std::shared_ptr<const SpaceOracle> oracle;
  Numbering points;

  /// L as a c.e. set of pairs <i,n>.
  CeSet membership() const;
  /// Strong inclusion as a c.e. set of pairs <m,n>.
  CeSet strong_inclusion() const;
};

/// Two topologies on one carrier sharing the point numbering.
struct BiSpace {
  Space tau;
  Space sigma;
  std::optional<Code> bi_pt;
};

BiSpace swapped(const BiSpace& bi);

/// a with x_i in B_a, a < m and a < n, searched along the neighbourhood of i.
Outcome sb_search(const Space& space, const Nat& i, const Nat& m, const Nat& n, Fuel fuel);

/// Decreasing basis-code sequence registered as a total function k -> f(k).
struct NormedEnumeration {
  Code f;
  std::shared_ptr<Registry> registry;

  /// Costs k+1 steps; Exhausted below that.
  Outcome at(std::uint64_t k, Fuel fuel) const { return registry->apply(f, k, fuel); }
};

/// Normed enumeration converging to x_i. Step k+1 refines f(k) against the
/// k-th neighbourhood element with sb_search under `step_budget`; a failed
/// step repeats f(k).
NormedEnumeration converge(const Space& space, const Nat& i, Fuel step_budget = 4096);

/// pt applied to the enumeration.
Outcome limit_pass(const Space& space, const NormedEnumeration& ne, Fuel fuel);

/// Join topology with basis B_<m,n> = B^tau_m meet B^sigma_n.
Space join_space(const BiSpace& bi);

/// Existential projections of a join membership set.
std::pair<CeSet, CeSet> split_L(const CeSet& join_l);
/// <i,<m,n>> in the result iff <i,m> in l_tau and <i,n> in l_sigma.
CeSet merge_L(const CeSet& l_tau, const CeSet& l_sigma);

struct StarNumbering {
  Numbering points;
  CeSet l_tau;
  CeSet l_sigma;
};

/// x_tau * x_sigma with membership lifted through the first (resp. second)
/// component of each product index.
StarNumbering star_bicomputable(const Numbering& x_tau, const Numbering& x_sigma, const CeSet& l_tau,
                                const CeSet& l_sigma);

/// <m1,m2> -> <pt_tau(m1), pt_sigma(m2)>.
Code bi_limit_pass(Registry& registry, Code pt_tau, Code pt_sigma);

/// x_i in the union of B_a over a in `set`. Sets with a direct membership test
/// are also searched along the neighbourhood of i.
Outcome lacombe_member(const Space& space, const LacombeSet& set, const Nat& i, Fuel fuel);

/// The s and t functions of effective regularity of tau with respect to sigma.
struct RegularityWitness {
  std::function<Outcome(const Nat& i, const Nat& m, Fuel)> s;
  std::function<LacombeSet(const Nat& i, const Nat& m)> t;  // sigma-codes
};

struct RegularityQuery {
  Nat i;
  Nat m;
};

struct RegularityOptions {
  Fuel fuel = 100000;
  std::size_t complement_samples = 20;
  std::size_t t_prefix = 48;   // t-codes checked for oracle disjointness
  std::size_t cross_points = 2;  // s-ball points cross-checked against t
  std::uint64_t seed = 0;
};

/// Conditions (a)-(d) per query, tau regular with respect to sigma.
std::vector<CheckRecord> check_effective_regularity(const BiSpace& bi, const RegularityWitness& w,
                                                    const std::vector<RegularityQuery>& queries,
                                                    const RegularityOptions& options, const std::string& label);

/// A basic open containing x_i but, per the oracle, not x_j.
Outcome specialization_refute(const Space& space, const Nat& i, const Nat& j, Fuel fuel);

}  // namespace bitopo
