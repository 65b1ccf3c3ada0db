#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bitopo/instances.hpp"
#include "bitopo/space.hpp"

using namespace bitopo;

namespace {

Dyadic d(long long m, int e = 0) { return Dyadic(m, e); }

}  // namespace

TEST_CASE("sb_search") {
  auto reals = make_reals();
  const Space& u = reals.bi.tau;
  const Nat zero = reals.point(d(0));
  const Nat m = reals.ball(Side::left, d(-1), 0);
  CHECK(u.precedes(reals.ball(Side::left, d(0), 2), m, 1).is_yes());
  auto a = sb_search(u, zero, m, m, 1000);
  REQUIRE(a.is_confirmed());
  CHECK(u.precedes(a.witness, m, 1).is_yes());

  const Nat m2 = reals.ball(Side::left, d(-1), 0);   // (-2, inf)
  const Nat n2 = reals.ball(Side::left, d(0), 0);    // (-1, inf)
  CHECK(u.oracle->region(m2).to_string() == "(-2,inf)");
  auto b = sb_search(u, zero, m2, n2, 1000);
  REQUIRE(b.is_confirmed());
  CHECK(u.oracle->region(b.witness).subset_of(u.oracle->region(n2)));
  CHECK(u.oracle->region(b.witness).contains(d(0)));
  CHECK(sb_search(u, zero, m2, n2, 0) == Outcome::exhausted(0));

  const Nat c = creal_around(reals, d(1, -2));
  auto e = sb_search(u, c, reals.ball(Side::left, d(0), 1), reals.ball(Side::left, d(1), 0), 100000);
  REQUIRE(e.is_confirmed());
  CHECK(u.oracle->region(e.witness).contains(d(1, -2)));
}

TEST_CASE("converge") {
  auto s = make_sierpinski();
  const Space& st = s.bi.tau;
  auto top = converge(st, PointTable::base_index(1));
  bool reached = false;
  for (std::uint64_t k = 0; k < 12; ++k) {
    auto f = top.at(k, 100);
    REQUIRE(f.is_confirmed());
    if (unpair(f.witness).first != 0) reached = true;
    else CHECK(!reached);
  }
  CHECK(reached);
  auto bot = converge(st, PointTable::base_index(0));
  for (std::uint64_t k = 0; k < 8; ++k) CHECK(unpair(bot.at(k, 100).witness).first == 0);
  CHECK(!bot.at(5, 3).is_confirmed());

  auto reals = make_reals();
  const Space& u = reals.bi.tau;
  auto ne = converge(u, reals.point(d(0)));
  Nat last = ne.at(0, 10).witness;
  for (std::uint64_t k = 1; k < 24; ++k) {
    const Nat next = ne.at(k, 100).witness;
    CHECK(u.oracle->region(next).contains(d(0)));
    if (next != last) CHECK(u.precedes(next, last, 1).is_yes());
    last = next;
  }
  auto [a, m] = unpair(last);
  CHECK(m >= 8);
  CHECK(delta_upper(dyadic_decode(a), d(0)) < Dyadic::pow2(-static_cast<std::int64_t>(m.convert_to<std::uint64_t>())));
}

TEST_CASE("limit pass") {
  auto reals = make_reals();
  const Space& u = reals.bi.tau;
  const Nat zero = reals.point(d(0));
  auto ne = converge(u, zero);
  auto j = limit_pass(u, ne, 10);
  REQUIRE(j.is_confirmed());
  CHECK(limit_pass(u, ne, 10) == j);
  CHECK(!limit_pass(u, ne, 0).is_confirmed());
  std::mt19937_64 rng(2);
  for (int k = 0; k < 40; ++k) {
    const Nat ball = pair(encode(random_dyadic(rng, 2, 2)), rng() % 4);
    const bool truth = u.oracle->region(ball).contains(d(0));
    CHECK(u.member(j.witness, ball, 1 << 16).is_yes() == truth);
  }
}

TEST_CASE("join and L round trips") {
  auto reals = make_reals();
  const Space j = join_space(reals.bi);
  const Nat b = pair(reals.ball(Side::left, d(0), 0), reals.ball(Side::right, d(0), 0));
  CHECK(j.oracle->region(b).to_string() == "(-1,1)");
  CHECK(j.member(reals.point(d(0)), b, 10).is_yes());
  CHECK(j.member(reals.point(d(1)), b, 10).is_no());

  std::mt19937_64 rng(9);
  auto [lt, ls] = split_L(j.membership());
  auto merged = merge_L(reals.bi.tau.membership(), reals.bi.sigma.membership());
  for (int k = 0; k < 100; ++k) {
    const Dyadic y = random_dyadic(rng, 2, 2);
    const Nat i = reals.point(y);
    const Nat m = pair(encode(random_dyadic(rng, 2, 2)), rng() % 3);
    const Nat n = pair(encode(random_dyadic(rng, 2, 2)), rng() % 3);
    const bool in_m = reals.bi.tau.oracle->region(m).contains(y);
    const bool in_n = reals.bi.sigma.oracle->region(n).contains(y);
    CHECK(lt.test(pair(i, m), 3000).is_yes() == in_m);
    CHECK(ls.test(pair(i, n), 3000).is_yes() == in_n);
    CHECK(merged.test(pair(i, pair(m, n)), 10).is_yes() == (in_m && in_n));
    const Nat mn = pair(m, n), mn2 = pair(pair(encode(random_dyadic(rng, 2, 2)), rng() % 3), pair(encode(random_dyadic(rng, 2, 2)), rng() % 3));
    const bool comp = reals.bi.tau.precedes(m, unpair(mn2).first, 1).is_yes() && reals.bi.sigma.precedes(n, unpair(mn2).second, 1).is_yes();
    CHECK(j.precedes(mn, mn2, 1).is_yes() == comp);
  }
  auto [et, es] = split_L(CeSet::listed(Enumerator::empty()));
  CHECK(!et.test(pair(0, 0), 1000).is_yes());
  CHECK(!es.test(pair(0, 0), 1000).is_yes());
}

TEST_CASE("star numbering and bi limit passing") {
  auto reals = make_reals();
  const Space& u = reals.bi.tau;
  const Space& l = reals.bi.sigma;
  const Nat zero = reals.point(d(0));
  auto star = star_bicomputable(l.points, u.points, l.membership(), u.membership());
  CHECK(star.points.deref(pair(zero, zero), 10).is_confirmed());
  CHECK(!star.points.deref(pair(zero, reals.point(d(1))), 1000).is_confirmed());
  const Nat ball = reals.ball(Side::left, d(0), 1);
  CHECK(star.l_sigma.test(pair(pair(zero, zero), ball), 10).is_yes() == u.member(zero, ball, 10).is_yes());

  auto f1 = converge(u, zero), f2 = converge(l, zero);
  auto bi = reals.registry->apply(*reals.bi.bi_pt, pair(f1.f.value, f2.f.value), 10);
  REQUIRE(bi.is_confirmed());
  CHECK(u.member(bi.witness, reals.ball(Side::left, d(0), 3), 1 << 16).is_yes());
  CHECK(l.member(bi.witness, reals.ball(Side::right, d(0), 3), 1 << 16).is_yes());
  CHECK(!l.member(bi.witness, reals.ball(Side::right, d(-1), 1), 1 << 16).is_yes());

  auto code = bi_limit_pass(*reals.registry, *u.pt, *l.pt);
  auto pp = reals.registry->apply(code, pair(f1.f.value, f2.f.value), 10);
  REQUIRE(pp.is_confirmed());
  auto [p1, p2] = unpair(pp.witness);
  CHECK(u.member(p1, reals.ball(Side::left, d(0), 3), 1 << 16).is_yes());
  CHECK(l.member(p2, reals.ball(Side::right, d(0), 3), 1 << 16).is_yes());
  auto dead = reals.registry->add([](const Nat&, Fuel f) { return Outcome::exhausted(f); }, "dead");
  CHECK(!reals.registry->apply(bi_limit_pass(*reals.registry, dead, *l.pt), pair(1, 1), 10).is_confirmed());
}

TEST_CASE("effective regularity checker") {
  RegularityOptions opt;
  opt.fuel = 20000;
  opt.complement_samples = 6;
  for (const char* which : {"reals", "sierpinski"}) {
    auto inst = std::string(which) == "reals" ? make_reals() : make_sierpinski();
    std::mt19937_64 rng(4);
    for (Side side : {Side::left, Side::right}) {
      const BiSpace bi = side == Side::left ? inst.bi : swapped(inst.bi);
      std::vector<RegularityQuery> qs;
      for (const Nat& i : sample_points(inst, rng, 6)) {
        auto v = bi.tau.oracle->value(i);
        if (!v || !bi.tau.points.domain(i, 1).is_yes()) continue;
        if (side == Side::right && !inst.table->get(i)->has(Side::right)) continue;
        qs.push_back({i, ball_containing(inst, side, *v, rng)});
      }
      auto records = check_effective_regularity(bi, inst.regularity(side), qs, opt, which);
      for (const auto& r : records) {
        INFO(r.witness.dump());
        CHECK(r.status == Status::pass);
      }
    }
  }

  auto reals = make_reals();
  RegularityWitness bad = reals.regularity(Side::right);
  bad.t = [](const Nat&, const Nat&) { return CeSet::listed(Enumerator::empty()); };
  const Nat zero = reals.point(d(0));
  opt.fuel = 2000;
  auto recs = check_effective_regularity(swapped(reals.bi), bad, {{zero, reals.ball(Side::right, d(1, -1), 0)}}, opt, "faulty");
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].status == Status::fail);
  CHECK(recs[0].witness["condition"] == "c");
  CHECK(recs[0].witness["counterexample"].contains("missing_point"));
}

TEST_CASE("specialization refutation") {
  auto s = make_sierpinski();
  const Nat top = PointTable::base_index(1), bot = PointTable::base_index(0);
  auto r = specialization_refute(s.bi.tau, top, bot, 1000);
  REQUIRE(r.is_confirmed());
  CHECK(unpair(r.witness).first != 0);
  CHECK(!specialization_refute(s.bi.tau, bot, top, 100000).is_confirmed());
  auto reals = make_reals();
  auto r2 = specialization_refute(reals.bi.tau, reals.point(d(1)), reals.point(d(0)), 1000);
  REQUIRE(r2.is_confirmed());
  CHECK(!reals.bi.tau.oracle->region(r2.witness).contains(d(0)));
}
