#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bitopo/dyadic.hpp"
#include "bitopo/enumerator.hpp"
#include "bitopo/nat.hpp"
#include "bitopo/registry.hpp"

using namespace bitopo;

TEST_CASE("pairing") {
  CHECK(pair(0, 0) == 0);
  CHECK(pair(1, 0) == 1);
  CHECK(pair(0, 1) == 2);
  CHECK(unpair(pair(3, 5)) == std::pair<Nat, Nat>{3, 5});
  for (unsigned n = 0; n < 2000; ++n) {
    auto [a, b] = unpair(n);
    CHECK(pair(a, b) == n);
  }
  Nat huge = Nat(1) << 300;
  auto [a, b] = unpair(pair(huge, huge + 7));
  CHECK(a == huge);
  CHECK(b == huge + 7);
}

TEST_CASE("tupling") {
  CHECK(tuple({4, 9}) == pair(4, 9));
  CHECK(tuple({1, 2, 3}) == pair(pair(1, 2), 3));
  CHECK(untuple(tuple({1, 2, 3}), 3) == std::vector<Nat>{1, 2, 3});
  CHECK_THROWS_AS(untuple(5, 1), std::invalid_argument);
  CHECK_THROWS_AS(tuple({7}), std::invalid_argument);
}

TEST_CASE("dyadic decode") {
  CHECK(dyadic_decode(tuple({3, 1, 0, 1})) == Dyadic(1));
  CHECK(dyadic_decode(tuple({0, 1, 0, 0})) == Dyadic(-1));
  CHECK(dyadic_decode(tuple({5, 5, 9, 2})) == Dyadic(0));
  CHECK(dyadic_decode(tuple({1, 0, 0, 3})) == Dyadic(1, -3));
  for (int m = -40; m <= 40; ++m)
    for (int e = -6; e <= 6; ++e) {
      Dyadic d(m, e);
      CHECK(dyadic_decode(encode(d)) == d);
    }
}

TEST_CASE("dyadic arithmetic against rationals") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long long> m(-100000, 100000);
  std::uniform_int_distribution<int> e(-30, 30);
  for (int k = 0; k < 2000; ++k) {
    Dyadic x(m(rng), e(rng)), y(m(rng), e(rng));
    CHECK((x + y).to_rational() == x.to_rational() + y.to_rational());
    CHECK((x - y).to_rational() == x.to_rational() - y.to_rational());
    CHECK((x * y).to_rational() == x.to_rational() * y.to_rational());
    CHECK((x < y) == (x.to_rational() < y.to_rational()));
  }
  CHECK(Dyadic::parse("3*2^-2") == Dyadic(3, -2));
  CHECK(Dyadic::parse("-7") == Dyadic(-7));
  CHECK(Dyadic::parse("7/8") == Dyadic(7, -3));
  CHECK(Dyadic(6, 0).mantissa() == 3);
  CHECK(Dyadic(0, 5).exponent() == 0);
}

TEST_CASE("dovetail") {
  TaskFamily one{[](std::uint64_t) { return Enumerator::naturals(); }, 1};
  auto hit = dovetail(one, [](std::uint64_t, const Nat& v) { return v == 7; }, 1000);
  REQUIRE(hit.is_confirmed());
  CHECK(unpair(hit.witness).second == 7);

  auto none = dovetail(one, [](std::uint64_t, const Nat&) { return false; }, 50);
  CHECK(!none.is_confirmed());
  CHECK(none.steps == 50);

  // Task 1 yields 99 only at step 5. Round 0 visits (0,0); round d >= 1
  // visits (0,d),(1,d-1). (1,5) comes second in round 6: 1 + 2*5 + 2 = 13.
  TaskFamily two{[](std::uint64_t t) {
                   if (t == 0) return Enumerator::of({1, 2, 3});
                   return Enumerator([](std::uint64_t k) -> std::optional<Nat> {
                     if (k == 5) return Nat(99);
                     return std::nullopt;
                   });
                 },
                 2};
  auto got = dovetail(two, [](std::uint64_t, const Nat& v) { return v == 99; }, 1000);
  REQUIRE(got.is_confirmed());
  CHECK(unpair(got.witness) == std::pair<Nat, Nat>{1, 99});
  CHECK(got.steps == 13);
  CHECK(!dovetail(two, [](std::uint64_t, const Nat& v) { return v == 99; }, 12).is_confirmed());
  for (Fuel f = 13; f < 60; ++f)
    CHECK(dovetail(two, [](std::uint64_t, const Nat& v) { return v == 99; }, f) == got);
}

TEST_CASE("search prunes refuted candidates") {
  auto test = [](const Nat& x, Fuel b) -> Verdict {
    if (x % 2 == 0) return Verdict::no(1);
    if (x == 9 && b >= 3) return Verdict::yes(3);
    return Verdict::unknown(b);
  };
  auto r = search(Enumerator::naturals(), test, 10000);
  REQUIRE(r.is_confirmed());
  CHECK(r.witness == 9);
  for (Fuel f = r.steps; f < r.steps + 40; ++f) CHECK(search(Enumerator::naturals(), test, f) == r);
  CHECK(!search(Enumerator::naturals(), test, r.steps - 1).is_confirmed());
  CHECK(search(Enumerator::naturals(), test, 0) == Outcome::exhausted(0));
}

TEST_CASE("ce sets") {
  auto evens = CeSet::decidable([](const Nat& n) { return n % 2 == 0; });
  CHECK(evens.test(4, 1).is_yes());
  CHECK(evens.test(7, 100).is_no());
  auto listed = CeSet::listed(Enumerator::of({3, 5, 8}));
  CHECK(listed.test(8, 10).is_yes());
  CHECK(!listed.test(4, 10).is_yes());
  auto squares = CeSet::image(Enumerator::naturals(), [](const Nat& n, Fuel) { return Outcome::confirmed(n * n, 1); });
  CHECK(squares.test(49, 100).is_yes());
  auto hit = squares.find([](const Nat& x, Fuel) { return Verdict::decide(x > 30); }, 1000);
  REQUIRE(hit.is_confirmed());
  CHECK(hit.witness == 36);
}

TEST_CASE("registry") {
  Registry reg;
  auto id = reg.identity();
  CHECK(reg.apply(id, 42, 5) == Outcome::confirmed(42, 0));
  auto add = reg.add(
      [](const Nat& n, Fuel fuel) {
        if (fuel == 0) return Outcome::exhausted(0);
        auto [a, b] = unpair(n);
        return Outcome::confirmed(a + b, 1);
      },
      "unpair-then-add");
  auto add3 = reg.specialize(add, 3);
  CHECK(reg.apply(add3, 4, 10).witness == 7);
  CHECK(reg.apply(add3, 4, 0) == Outcome::exhausted(0));
  auto twice = reg.compose(add3, add3);
  CHECK(reg.apply(twice, 1, 10).witness == 7);
  CHECK_THROWS_AS(reg.apply(Code{999}, 0, 1), UnknownCode);
}
