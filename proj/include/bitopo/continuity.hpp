#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bitopo/dyadic.hpp"
#include "bitopo/instances.hpp"
#include "bitopo/quasimetric.hpp"
#include "bitopo/region.hpp"
#include "bitopo/report.hpp"

namespace bitopo {

inline Side other(Side s) { return s == Side::left ? Side::right : Side::left; }

/// Exact image of a basic open: an interval whose ends may be attained, or a
/// finite set of carrier values.
struct ImageSet {
  std::optional<Dyadic> lo, hi;  // missing = unbounded
  bool lo_closed = false, hi_closed = false;
  std::optional<std::vector<Dyadic>> finite;

  bool empty() const;
  bool contains(const Dyadic& y) const;
  bool subset_of(const Region& r) const;
  std::string to_string() const;
};

/// Nondecreasing continuous map of the reals with exact dyadic values.
struct RealMap {
  struct End {
    std::optional<Dyadic> value;  // limit at the infinite end; missing = unbounded
    bool attained = false;
  };

  std::string name;
  std::function<Dyadic(const Dyadic&)> at;
  std::function<bool(const Dyadic&)> flat_right;  // constant on (x, x + eps)
  std::function<bool(const Dyadic&)> flat_left;   // constant on (x - eps, x)
  End low, high;

  /// Image of the open interval r.
  ImageSet image(const Region& r) const;
};

/// x -> alpha * x + beta, alpha > 0.
RealMap affine_map(std::string name, Dyadic alpha, Dyadic beta);
RealMap identity_map();
RealMap add_const(const Dyadic& c);
RealMap scale2();
RealMap max0();
RealMap constant_map(const Dyadic& c);

/// F with F(x_i) = x'_{f(i)}. Side s of the domain maps to side s of the
/// codomain (tau to tau', sigma to sigma').
struct EffectiveOperator {
  std::string name;
  Code f;
  QmInstance domain;
  QmInstance codomain;
  /// Image of a domain basic open of the given side; instances only.
  std::function<ImageSet(Side, const Nat&)> interval_ext;
  /// F on carrier values, for oracles.
  std::function<Dyadic(const Dyadic&)> value_map;

  /// interval_ext(side, a) inside the codomain ball n.
  bool maps_into(Side side, const Nat& a, const Nat& n) const;
};

/// Operator on the reals instance given by an exact map. Base points go to
/// base points; other points to image points whose probes certify source
/// balls through the map.
EffectiveOperator real_operator(const QmInstance& reals, const RealMap& F);
/// x -> top iff x > 0, into Sierpinski space (sharing the registry). Image
/// points are halting points, so only the tau' side is computable.
EffectiveOperator sign_step(const QmInstance& reals, const QmInstance& sierpinski);
/// identity, add_const (c = 1), scale2, max0; nullopt for other names.
std::optional<EffectiveOperator> demo_operator(const std::string& name, const QmInstance& reals);
std::vector<std::string> demo_operator_names();

Outcome apply_operator(const EffectiveOperator& F, const Nat& i, Fuel fuel);

/// h(i, n): domain code a with x_i in B_a and F[B_a] inside B'_n.
using PointwiseModulus = std::function<Outcome(const Nat& i, const Nat& n, Fuel)>;
/// g(n): domain codes whose union is F^-1[B'_n].
using PreimageMap = std::function<LacombeSet(const Nat& n)>;

struct RejectedCandidate {
  Nat code;
  Outcome counterexample;  // r's point index, when found
};

/// Searches the neighbourhood of x_i for a ball certified by interval_ext to
/// map into B'_n. With `log`, the first few rejected candidates are handed to
/// the non-inclusion witness.
Outcome modulus(const EffectiveOperator& F, Side side, const Nat& i, const Nat& n, Fuel fuel,
                std::vector<RejectedCandidate>* log = nullptr);
PointwiseModulus modulus_of(const EffectiveOperator& F, Side side);

/// Exponential fuel ladder for r.
struct FuelLadder {
  Fuel start = 1024;
  Fuel cap = 1000000;
};

/// s and r of the non-inclusion witness for side `side`, built from the
/// codomain's regularity (s', t') of that side.
struct NonInclusionWitness {
  /// M_{s(i,m)}: domain indices j with x'_{f(j)} in B'_{s'(f(i),m)}.
  std::function<CeSet(const Nat& i, const Nat& m)> s;
  /// s'(f(i), m), the codomain code behind M.
  std::function<Outcome(const Nat& i, const Nat& m)> s_prime;
  /// x_r in B_n \ M_{s(i,m)}: a dense point whose image lies in the t'-cover.
  std::function<Outcome(const Nat& i, const Nat& n, const Nat& m, Fuel)> r;
};

NonInclusionWitness build_noninclusion_witness(const EffectiveOperator& F, Side side,
                                               const RegularityWitness& codomain_regularity,
                                               FuelLadder ladder = {}, Fuel s_fuel = 100000);

/// h(i, n) = first a in g(n) with x_i in B_a.
PointwiseModulus pointwise_from_continuous(const EffectiveOperator& F, Side side, PreimageMap g);
/// g(n) = { h(k(a), n) | x'_{f(k(a))} in B'_n } over the dense base.
PreimageMap continuous_from_pointwise(const EffectiveOperator& F, Side side, PointwiseModulus h);
/// The operator whose image point of x_i lies in B'_<b,e> iff some code
/// strongly included in <b,e> has x_i in its preimage. Sides without a
/// preimage map stay uncomputable.
EffectiveOperator operator_from_continuous(const QmInstance& domain, const QmInstance& codomain, PreimageMap g_left,
                                           std::optional<PreimageMap> g_right, std::string name);

struct BicontinuityOptions {
  Fuel fuel = 100000;
  std::size_t balls_per_point = 3;
  std::size_t family = 4;  // neighbourhood candidates refuted when no modulus exists
  std::uint64_t seed = 0;
};

/// Pointwise continuity of both topology pairs at the given points, with
/// moduli from interval_ext and counterexamples from the oracle.
std::vector<CheckRecord> check_bicontinuity(const EffectiveOperator& F, const std::vector<Nat>& points,
                                            const BicontinuityOptions& options);

/// Candidate enumeration of {bot}, built once the probe points exist.
using BotCandidate = std::function<Enumerator(const std::vector<Nat>& probe_points)>;

/// Classifies halting probes and checks a claimed enumeration of {bot}
/// against them; always reports the specialization facts bot <= top
/// (unrefuted) and top <= bot (refuted).
std::vector<CheckRecord> friedberg_diagnostic(const QmInstance& sierpinski, const std::optional<BotCandidate>& candidate,
                                              const std::vector<Code>& probes, Fuel fuel);

}  // namespace bitopo
