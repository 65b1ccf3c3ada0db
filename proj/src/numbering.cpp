#include "bitopo/numbering.hpp"

namespace bitopo {

Verdict Reduction::spot_check(const Nat& i, Fuel fuel) const {
  auto gi = apply(i, fuel);
  if (!gi) return Verdict::unknown(gi.steps);
  Fuel used = gi.steps;
  auto left = from_.deref(i, fuel);
  auto right = to_.deref(gi.witness, fuel);
  used += left.steps + right.steps;
  if (!left || !right) return Verdict::unknown(used);
  if (!to_.equal) return Verdict::unknown(used);
  auto v = to_.equal(left.witness, right.witness, fuel);
  if (v.truth == Truth::no) return Verdict::no(used + v.steps);
  return {v.truth, used + v.steps};
}

Numbering product_numbering(const Numbering& nu, const Numbering& kappa) {
  auto deref = [nu, kappa](const Nat& ij, Fuel fuel) -> Outcome {
    auto [i, j] = unpair(ij);
    auto left = nu.deref(i, fuel);
    if (!left) return left;
    auto right = kappa.deref(j, fuel);
    if (!right) return Outcome::exhausted(left.steps + right.steps);
    const Fuel used = left.steps + right.steps;
    if (!nu.equal) return Outcome::exhausted(used);
    auto same = nu.equal(left.witness, right.witness, fuel);
    if (!same.is_yes()) return Outcome::exhausted(used + same.steps);
    return Outcome::confirmed(left.witness, used + same.steps);
  };
  auto domain = [deref](const Nat& ij, Fuel fuel) {
    auto d = deref(ij, fuel);
    return d ? Verdict::yes(d.steps) : Verdict::unknown(d.steps);
  };
  return Numbering{nu.name + "*" + kappa.name, domain, deref, nu.equal};
}

std::pair<Code, Code> projection_codes(Registry& registry) {
  auto first = registry.add([](const Nat& n, Fuel) { return Outcome::confirmed(unpair(n).first, 1); }, "pi1");
  auto second = registry.add([](const Nat& n, Fuel) { return Outcome::confirmed(unpair(n).second, 1); }, "pi2");
  return {first, second};
}

Outcome ce_member(const CEnumerableSet& x, const Nat& i, Fuel fuel) {
  auto v = x.test(i, fuel);
  return v.is_yes() ? Outcome::confirmed(i, v.steps) : Outcome::exhausted(std::min(v.steps, fuel));
}

}  // namespace bitopo
