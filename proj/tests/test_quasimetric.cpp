#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bitopo/instances.hpp"
#include "bitopo/quasimetric.hpp"

using namespace bitopo;

namespace {

Dyadic d(long long m, int e = 0) { return Dyadic(m, e); }

}  // namespace

TEST_CASE("conjugation") {
  auto reals = make_reals();
  const QuasiMetric& du = reals.metric();
  const QuasiMetric dl = conjugate(du);
  CHECK(dl.kind == MetricKind::lower);
  CHECK(conjugate(dl).kind == MetricKind::upper);
  CHECK(conjugate(dl).name == du.name);
  CHECK(dl.delta(d(3), d(5)) == d(2));
  CHECK(dl.delta(d(5), d(3)) == d(0));
  CHECK(du.delta(d(3), d(5)) == d(0));
  CHECK(du.delta(d(5), d(3)) == d(2));
  std::mt19937_64 rng(3);
  for (int k = 0; k < 300; ++k) {
    auto y = random_dyadic(rng, 4, 3), z = random_dyadic(rng, 4, 3);
    CHECK(dl.delta(y, z) == du.delta(z, y));
    auto t = tuple({encode(y), encode(z), Nat(rng() % 9), Nat(rng() % 4)});
    CHECK(conjugate(dl).lt_set().test(t, 1).truth == du.lt_set().test(t, 1).truth);
  }
  auto s = make_sierpinski();
  const QuasiMetric sc = conjugate(s.metric());
  CHECK(sc.delta(d(0), d(1)) == d(1));
  CHECK(s.metric().delta(d(1), d(0)) == d(1));
  CHECK(s.metric().delta(d(0), d(1)) == d(0));
}

TEST_CASE("symmetrization") {
  auto reals = make_reals();
  const auto& q = reals.metric();
  CHECK(sym_lt(q, encode(d(5)), encode(d(5)), 1, 30).is_confirmed());
  CHECK(sym_lt(q, encode(d(0)), encode(d(1)), 2, 0).is_confirmed());
  CHECK(!sym_lt(q, encode(d(0)), encode(d(1)), 1, 0).is_confirmed());
  auto s = make_sierpinski();
  CHECK(!sym_lt(s.metric(), 0, 1, 1, 0).is_confirmed());
}

TEST_CASE("quasi-metric axioms on the base") {
  std::mt19937_64 rng(11);
  auto reals = make_reals();
  for (auto q : {reals.metric(), conjugate(reals.metric())})
    for (int k = 0; k < 300; ++k) {
      auto x = random_dyadic(rng, 4, 4), y = random_dyadic(rng, 4, 4), z = random_dyadic(rng, 4, 4);
      CHECK(q.delta(x, x) == d(0));
      CHECK(q.delta(x, z) <= q.delta(x, y) + q.delta(y, z));
    }
}

TEST_CASE("induced strong inclusion") {
  auto reals = make_reals();
  const Space& u = reals.bi.tau;
  const Nat c0 = encode(d(0)), cm1 = encode(d(-1));
  CHECK(u.precedes(pair(c0, 5), pair(c0, 2), 1).is_yes());
  CHECK(u.precedes(pair(c0, 2), pair(cm1, 0), 1).is_yes());
  CHECK(!u.precedes(pair(c0, 2), pair(c0, 2), 1).is_yes());
  std::mt19937_64 rng(5);
  int hits = 0;
  for (int k = 0; k < 2000; ++k) {
    Nat m = pair(encode(random_dyadic(rng, 2, 3)), rng() % 5), n = pair(encode(random_dyadic(rng, 2, 3)), rng() % 4);
    for (const Space* sp : {&reals.bi.tau, &reals.bi.sigma})
      if (sp->precedes(m, n, 1).is_yes()) {
        ++hits;
        CHECK(sp->oracle->region(m).subset_of(sp->oracle->region(n)));
      }
  }
  CHECK(hits > 100);
}

TEST_CASE("ball membership") {
  auto reals = make_reals();
  const Space& u = reals.bi.tau;
  const Nat zero = reals.point(d(0));
  CHECK(ball_member(u, zero, reals.ball(Side::left, d(-1), 0), 10).is_confirmed());
  CHECK(!ball_member(u, zero, reals.ball(Side::left, d(1), 1), 100000).is_confirmed());
  CHECK(ball_member(u, base_to_c(encode(d(0))), pair(encode(d(0)), 5), 1).is_confirmed());
  CHECK(!ball_member(u, base_to_c(encode(d(1))), reals.ball(Side::left, d(2), 1), 100000).is_confirmed());
  auto s = make_sierpinski();
  CHECK(ball_member(s.bi.tau, PointTable::base_index(1), pair(0, 1), 1).is_confirmed());

  const Nat wc = c_to_wc(*reals.table, zero);
  CHECK(ball_member(u, wc, reals.ball(Side::left, d(-1), 0), 10).is_confirmed());
  CHECK(!ball_member(reals.bi.sigma, wc, reals.ball(Side::right, d(1), 0), 100000).is_confirmed());
  CHECK(ball_member(reals.bi.sigma, zero, reals.ball(Side::right, d(1), 0), 1).is_confirmed());
}

TEST_CASE("limit passing") {
  auto reals = make_reals();
  auto& reg = *reals.registry;
  auto f = reg.add([](const Nat& k, Fuel) {
    const auto kk = static_cast<std::int64_t>(to_u64(k));
    return Outcome::confirmed(pair(encode(d(1) - Dyadic::pow2(-kk)), kk), 1);
  }, "to-one");
  const Nat one = limit_pass_wc(*reals.table, reals.bi.tau, f);
  const Space& u = reals.bi.tau;
  CHECK(ball_member(u, one, reals.ball(Side::left, d(1), 3), 100000).is_confirmed());
  CHECK(ball_member(u, one, reals.ball(Side::left, d(0), 0), 100000).is_confirmed());
  CHECK(!ball_member(u, one, reals.ball(Side::left, d(2), 1), 100000).is_confirmed());
  auto g = reg.add([](const Nat& k, Fuel) {
    const auto kk = static_cast<std::int64_t>(to_u64(k));
    return Outcome::confirmed(pair(encode(d(1) + Dyadic::pow2(-kk)), kk), 1);
  }, "to-one-from-above");
  const Nat both = bi_limit_pass_c(*reals.table, u, reals.bi.sigma, f, g);
  CHECK(ball_member(reals.bi.sigma, both, reals.ball(Side::right, d(1), 4), 100000).is_confirmed());
  CHECK(!ball_member(reals.bi.sigma, both, reals.ball(Side::right, d(0), 1), 100000).is_confirmed());
  CHECK(ball_member(u, both, reals.ball(Side::left, d(1), 4), 100000).is_confirmed());
}

TEST_CASE("regularity witnesses") {
  auto reals = make_reals();
  const Space& l = reals.bi.sigma;
  const QuasiMetric dl = reals.metric(Side::right);
  const Nat zero = reals.point(d(0));
  const Nat ball = reals.ball(Side::right, d(1, -1), 0);  // (-inf, 3/2)
  CHECK(l.oracle->region(ball).to_string() == "(-inf,3*2^-1)");
  CHECK(l.precedes(reals.ball(Side::right, d(0), 2), ball, 1).is_yes());
  auto s = regularity_s(l, zero, ball, 1000);
  REQUIRE(s.is_confirmed());
  CHECK(l.oracle->region(s.witness).contains(d(0)));
  CHECK(l.oracle->region(s.witness).subset_of(l.oracle->region(ball)));
  CHECK(!regularity_s(l, zero, ball, 0).is_confirmed());

  auto t = regularity_t(dl, reals.ball(Side::right, d(0), 2));
  const Nat v = reals.ball(Side::left, d(3, -1), 1);
  CHECK(t.test(v, 1).is_yes());
  CHECK(reals.bi.tau.oracle->region(v).to_string() == "(1,inf)");

  auto sier = make_sierpinski();
  const Space& st = sier.bi.tau;
  const Nat top = PointTable::base_index(1);
  auto s2 = regularity_s(st, top, pair(3, 1), 1000);
  REQUIRE(s2.is_confirmed());
  CHECK(unpair(s2.witness).first != 0);
  auto t2 = regularity_t(sier.metric(), s2.witness);
  int seen = 0;
  for (std::uint64_t k = 0; k < 200; ++k)
    if (auto c = t2.enumerator()(k)) {
      ++seen;
      CHECK(unpair(*c).first == 0);
      const Region r = sier.bi.sigma.oracle->region(*c);
      CHECK(r.contains(d(0)));
      CHECK(!r.contains(d(1)));
    }
  CHECK(seen > 0);
  // S-ball query from top: {top}-codes qualify through {top} inside S.
  CHECK(st.precedes(pair(4, 0), pair(0, 3), 1).is_yes());
}

TEST_CASE("refine toward") {
  auto reals = make_reals();
  const Space& u = reals.bi.tau;
  const Nat one = reals.point(d(1));
  const Nat big = reals.ball(Side::left, d(0), 0);
  auto r = refine_toward(u, *reals.table, Side::left, one, big, 1000);
  REQUIRE(r.is_confirmed());
  CHECK(u.precedes(r.witness, big, 1).is_yes());
  CHECK(u.oracle->region(r.witness).contains(d(1)));
  CHECK(!refine_toward(u, *reals.table, Side::left, one, big, 0).is_confirmed());
  const Nat around = creal_around(reals, d(1));
  auto r2 = refine_toward(u, *reals.table, Side::left, around, big, 100000);
  REQUIRE(r2.is_confirmed());
  CHECK(u.oracle->region(r2.witness).contains(d(1)));
}
