#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bitopo/instances.hpp"
#include "bitopo/numbering.hpp"

using namespace bitopo;

TEST_CASE("reductions") {
  auto reals = make_reals();
  auto reg = reals.registry;
  const Numbering& xc = reals.bi.tau.points;
  Reduction id(xc, xc, reg, reg->identity());
  CHECK(id.spot_check(reals.point(Dyadic(5)), 10).is_yes());

  Numbering beta{"beta", [](const Nat&, Fuel) { return Verdict::yes(); },
                 [](const Nat& a, Fuel) { return Outcome::confirmed(base_to_c(a), 1); }, xc.equal};
  auto g = reg->add([](const Nat& a, Fuel) { return Outcome::confirmed(base_to_c(a), 1); }, "g");
  CHECK(Reduction(beta, xc, reg, g).spot_check(encode(Dyadic(0)), 10).is_yes());

  auto table = reals.table;
  auto f = reg->add([table](const Nat& i, Fuel) { return Outcome::confirmed(c_to_wc(*table, i), 1); }, "f");
  CHECK(Reduction(xc, xc, reg, f).spot_check(creal_around(reals, Dyadic(0)), 10).is_yes());
}

TEST_CASE("product numbering") {
  auto reals = make_reals();
  const Numbering& nu = reals.bi.tau.points;
  auto prod = product_numbering(nu, nu);
  const Nat zero = reals.point(Dyadic(0));
  CHECK(prod.deref(pair(zero, zero), 5) == Outcome::confirmed(zero, 3));
  CHECK(!prod.deref(pair(zero, reals.point(Dyadic(1))), 100000).is_confirmed());
  const Nat c = creal_around(reals, Dyadic(0));
  CHECK(!prod.deref(pair(c, zero), 100000).is_confirmed());
  auto [p1, p2] = projection_codes(*reals.registry);
  CHECK(reals.registry->apply(p1, pair(3, 4), 1).witness == 3);
  CHECK(reals.registry->apply(p2, pair(3, 4), 1).witness == 4);
}

TEST_CASE("ce membership") {
  CHECK(ce_member(CeSet::listed(Enumerator::naturals()), 17, 100).is_confirmed());
  CHECK(!ce_member(CeSet::listed(Enumerator::empty()), 17, 100).is_confirmed());
  auto evens = CeSet::listed(Enumerator::filtered([](const Nat& n) { return n % 2 == 0; }));
  CHECK(!ce_member(evens, 7, 10000).is_confirmed());
  auto hit = ce_member(evens, 8, 100);
  REQUIRE(hit.is_confirmed());
  CHECK(hit.steps >= 1);
}

TEST_CASE("lacombe membership") {
  auto reals = make_reals();
  const Space& u = reals.bi.tau;
  CHECK(lacombe_member(u, CeSet::listed(Enumerator::naturals()), reals.point(Dyadic(3)), 10000).is_confirmed());
  CHECK(!lacombe_member(u, CeSet::listed(Enumerator::empty()), reals.point(Dyadic(3)), 10000).is_confirmed());
  const Nat pos = reals.ball(Side::left, Dyadic(1), 0);  // (0, inf)
  CHECK(u.oracle->region(pos).to_string() == "(0,inf)");
  auto single = CeSet::listed(Enumerator::of({pos}));
  CHECK(lacombe_member(u, single, reals.point(Dyadic(1)), 100).is_confirmed());
  CHECK(!lacombe_member(u, single, reals.point(Dyadic(-1)), 100000).is_confirmed());
  CHECK(lacombe_member(u, single, creal_around(reals, Dyadic(1)), 1000).is_confirmed());
}
