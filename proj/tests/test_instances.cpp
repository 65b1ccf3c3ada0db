#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bitopo/instances.hpp"

using namespace bitopo;

namespace {

Dyadic d(long long m, int e = 0) { return Dyadic(m, e); }

}  // namespace

TEST_CASE("reals") {
  CHECK(delta_lower(d(3), d(5)) == d(2));
  CHECK(delta_lower(d(5), d(3)) == d(0));
  CHECK(delta_upper(d(3), d(5)) == d(0));
  CHECK(delta_upper(d(5), d(3)) == d(2));
  auto reals = make_reals();
  CHECK(reals.bi.tau.oracle->region(reals.ball(Side::left, d(1), 2)).to_string() == "(3*2^-2,inf)");
  CHECK(reals.bi.sigma.oracle->region(reals.ball(Side::right, d(1), 2)).to_string() == "(-inf,5*2^-2)");
  std::mt19937_64 rng(1);
  for (int k = 0; k < 200; ++k) {
    const Dyadic y = random_dyadic(rng, 3, 3), u = random_dyadic(rng, 3, 3);
    const auto e = static_cast<std::int64_t>(rng() % 4);
    CHECK(reals.metric().ball(u, e).contains(y) == (delta_upper(u, y) < Dyadic::pow2(-e)));
    CHECK(reals.metric(Side::right).ball(u, e).contains(y) == (delta_lower(u, y) < Dyadic::pow2(-e)));
  }
}

TEST_CASE("bracketed reals") {
  auto reals = make_reals();
  auto& reg = *reals.registry;
  const Space& u = reals.bi.tau;
  const Space& l = reals.bi.sigma;
  const Dyadic c(3, -2);
  auto konst = register_sequence(reg, [c](std::uint64_t) { return c; }, "const");
  const Nat p = make_creal(reals, konst, konst, c);
  const Nat base = reals.point(c);
  std::mt19937_64 rng(8);
  for (int k = 0; k < 100; ++k) {
    const Nat ball = pair(encode(random_dyadic(rng, 2, 3)), rng() % 4);
    CHECK(u.member(p, ball, 64).is_yes() == u.member(base, ball, 64).is_yes());
    CHECK(l.member(p, ball, 64).is_yes() == l.member(base, ball, 64).is_yes());
  }
  const Nat one = creal_around(reals, d(1));
  CHECK(u.member(one, reals.ball(Side::left, d(1), 6), 1000).is_yes());
  CHECK(l.member(one, reals.ball(Side::right, d(1), 6), 1000).is_yes());
  CHECK(!u.member(one, reals.ball(Side::left, d(2), 1), 1000).is_yes());
  auto zero_lo = register_sequence(reg, [](std::uint64_t) { return Dyadic(0); }, "zero");
  auto zero_hi = register_sequence(reg, [](std::uint64_t k) { return Dyadic::pow2(-static_cast<std::int64_t>(k)); }, "shrink");
  const Nat zero = make_creal(reals, zero_lo, zero_hi, d(0));
  CHECK(l.member(zero, reals.ball(Side::right, d(0), 9), 1000).is_yes());
  CHECK(!l.member(zero, reals.ball(Side::right, d(-1), 1), 1000).is_yes());
}

TEST_CASE("sierpinski tables") {
  auto s = make_sierpinski();
  const auto& q = s.metric();
  CHECK(q.delta(d(0), d(1)) == d(0));
  CHECK(q.delta(d(1), d(0)) == d(1));
  CHECK(q.delta(d(0), d(0)) == d(0));
  CHECK(q.delta(d(1), d(1)) == d(0));
  CHECK(s.bi.tau.oracle->region(pair(0, 5)).contains(d(0)));
  CHECK(s.bi.tau.oracle->region(pair(0, 5)).contains(d(1)));
  CHECK(!s.bi.tau.oracle->region(pair(3, 5)).contains(d(0)));
  CHECK(s.bi.tau.oracle->region(pair(3, 5)).contains(d(1)));
  CHECK(s.bi.tau.precedes(pair(3, 1), pair(0, 7), 1).is_yes());
  CHECK(!s.bi.tau.precedes(pair(0, 1), pair(2, 1), 1).is_yes());
  auto t = sierpinski_tables(s);
  CHECK(t["delta"].size() == 4);
  CHECK(t["precedes_equal_radii"].size() == 4);
  int holds = 0;
  for (const auto& row : t["precedes_equal_radii"]) holds += row["precedes"].get<bool>();
  CHECK(holds == 1);
}

TEST_CASE("halting points") {
  auto s = make_sierpinski();
  auto& reg = *s.registry;
  const Space& st = s.bi.tau;
  const Nat fast = halting_point(s, halting_after(reg, 0), true);
  CHECK(st.member(fast, pair(1, 3), 1).is_yes());
  const Nat never = halting_point(s, never_halting(reg), false);
  CHECK(!st.member(never, pair(1, 3), 1 << 20).is_yes());
  CHECK(st.member(never, pair(0, 3), 1).is_yes());
  const Nat late = halting_point(s, halting_after(reg, 100), true);
  CHECK(!st.member(late, pair(1, 0), 50).is_yes());
  CHECK(st.member(late, pair(1, 0), 100).is_yes());
  CHECK(!s.bi.sigma.member(never, pair(0, 0), 1 << 20).is_yes());
}
