#pragma once

#include <functional>
#include <memory>
#include <string>

#include "bitopo/enumerator.hpp"
#include "bitopo/registry.hpp"

namespace bitopo {

/// (x, y, budget) -> verdict on a binary relation.
using PairTest = std::function<Verdict(const Nat&, const Nat&, Fuel)>;

/// Partial numbering of a carrier. Indices dereference to opaque carrier
/// handles; equality of handles is only ever semi-tested.
struct Numbering {
  std::string name;
  SemiTest domain;
  Producer deref;
  PairTest equal;  // on handles; empty when the carrier has no equality test
};

/// Packaged reduction nu <= kappa via g: nu_m = kappa_g(m).
class Reduction {
 public:
  Reduction(Numbering from, Numbering to, std::shared_ptr<Registry> registry, Code g)
      : from_(std::move(from)), to_(std::move(to)), registry_(std::move(registry)), g_(g) {}

  Outcome apply(const Nat& i, Fuel fuel) const { return registry_->apply(g_, i, fuel); }
  /// Semi-verifies nu_i = kappa_g(i) through the target's handle equality.
  Verdict spot_check(const Nat& i, Fuel fuel) const;

  const Numbering& from() const { return from_; }
  const Numbering& to() const { return to_; }
  Code code() const { return g_; }

 private:
  Numbering from_, to_;
  std::shared_ptr<Registry> registry_;
  Code g_;
};

/// (nu * kappa)_<i,j> = nu_i, defined once nu_i = kappa_j is confirmed. The
/// domain is fuel-relative: an unconfirmed pair is never reported undefined.
Numbering product_numbering(const Numbering& nu, const Numbering& kappa);

/// Codes of the two projections <i,j> -> i and <i,j> -> j.
std::pair<Code, Code> projection_codes(Registry& registry);

/// c.e. subset of a numbering's index set (the W_n of M_n).
using CEnumerableSet = CeSet;
/// Lacombe set: a c.e. set of basic-open codes, read as the union of those sets.
using LacombeSet = CeSet;

/// Confirmed(i) with the enumeration step count once i shows up in X.
Outcome ce_member(const CEnumerableSet& x, const Nat& i, Fuel fuel);

}  // namespace bitopo
