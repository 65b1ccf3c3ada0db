#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bitopo/cli.hpp"

using namespace bitopo;

namespace {

RunConfig small(InstanceKind kind = InstanceKind::reals) {
  RunConfig c;
  c.instance = kind;
  c.samples = 8;
  c.fuel = 100000;
  c.seed = 11;
  return c;
}

bool has_check(const Report& r, const std::string& prefix, Status s) {
  for (const auto& c : r.checks)
    if (c.name.starts_with(prefix) && c.status == s) return true;
  return false;
}

}  // namespace

TEST_CASE("ball specs") {
  auto reals = make_reals();
  auto [su, u] = parse_ball(reals, "(7/8,inf)");
  CHECK(su == Side::left);
  CHECK(reals.space(su).oracle->render(u) == "(7*2^-3,inf)");
  auto [sl, l] = parse_ball(reals, "(-inf,3*2^-1)");
  CHECK(sl == Side::right);
  CHECK(reals.space(sl).oracle->render(l) == "(-inf,3*2^-1)");
  CHECK_THROWS_AS(parse_ball(reals, "(0,1)"), UsageError);
  CHECK_THROWS_AS(parse_ball(reals, "(0,"), UsageError);
  CHECK_THROWS_AS(parse_instance("torus"), UsageError);
}

TEST_CASE("check-basis") {
  auto r = cmd_check_basis(small());
  CHECK(r.checks.size() == 16);
  CHECK(r.exit_code() == 0);

  auto s = cmd_check_basis(small(InstanceKind::sierpinski));
  CHECK(s.exit_code() == 0);
  REQUIRE(s.extra.contains("tables"));
  CHECK(s.extra["tables"]["precedes_equal_radii"].size() == 4);

  RunConfig none = small();
  none.samples = 0;
  auto e = cmd_check_basis(none);
  CHECK(e.checks.empty());
  CHECK(e.exit_code() == 0);
}

TEST_CASE("regularity") {
  RunConfig c = small();
  c.samples = 4;
  auto r = cmd_regularity(c);
  CHECK(r.checks.size() == 8);
  CHECK(r.exit_code() == 0);
  CHECK(cmd_regularity(small(InstanceKind::sierpinski)).exit_code() == 0);

  // t listing every code meets every s-ball.
  auto faulty = cmd_regularity(c, [](const QmInstance& inst, Side side) {
    RegularityWitness w = inst.regularity(side);
    w.t = [](const Nat&, const Nat&) { return CeSet::listed(Enumerator::naturals()); };
    return w;
  });
  CHECK(faulty.exit_code() == 1);
  REQUIRE(!faulty.checks.empty());
  CHECK(faulty.checks[0].status == Status::fail);
  CHECK(faulty.checks[0].witness["condition"] == "d");
}

TEST_CASE("modulus") {
  auto r = cmd_modulus(small(), "add_const", "0", "(7/8,inf)");
  REQUIRE(r.checks.size() == 1);
  CHECK(r.exit_code() == 0);
  const Region ball = parse_region(r.checks[0].witness["ball"].get<std::string>());
  CHECK(ball.contains(Dyadic(0)));
  CHECK(*ball.lo >= Dyadic(-1, -3));

  auto id = cmd_modulus(small(), "identity", "3/4", "(-inf,2)");
  CHECK(id.exit_code() == 0);
  CHECK_THROWS_AS(cmd_modulus(small(), "add_const", "0", "(2,inf)"), UsageError);
  CHECK_THROWS_AS(cmd_modulus(small(), "cube", "0", "(-1,inf)"), UsageError);
  CHECK_THROWS_AS(cmd_modulus(small(InstanceKind::sierpinski), "identity", "0", "(-1,inf)"), UsageError);

  RunConfig starved = small();
  starved.fuel = 1;
  CHECK(cmd_modulus(starved, "scale2", "0", "(-1/1024,inf)").exit_code() == 3);
}

TEST_CASE("witness") {
  auto r = cmd_witness(small(), "scale2", "0", "(-3,inf)", "(-1/2,inf)");
  REQUIRE(r.checks.size() == 1);
  CHECK(r.exit_code() == 0);
  CHECK(r.checks[0].witness.contains("z"));
  CHECK(r.checks[0].witness.contains("t_ball"));

  RunConfig c = small();
  c.fuel = 20000;
  CHECK(cmd_witness(c, "identity", "0", "(-1/16,inf)", "(-1,inf)").exit_code() == 3);
  CHECK_THROWS_AS(cmd_witness(c, "identity", "0", "(1,inf)", "(-1,inf)"), UsageError);
  CHECK_THROWS_AS(cmd_witness(c, "identity", "0", "(-1,inf)", "(-inf,1)"), UsageError);
}

TEST_CASE("friedberg") {
  RunConfig c = small(InstanceKind::sierpinski);
  c.fuel = 20000;
  auto facts = cmd_friedberg(c, std::nullopt);
  CHECK(facts.checks.size() == 2);
  CHECK(facts.exit_code() == 0);

  auto bad = cmd_friedberg(c, "first-probe");
  CHECK(bad.exit_code() == 1);
  CHECK(has_check(bad, "unsound", Status::fail));
  CHECK(has_check(cmd_friedberg(c, "bot-only"), "upward closure", Status::fail));
  CHECK(has_check(cmd_friedberg(c, "nonhalting"), "upward closure", Status::fail));
  CHECK(has_check(cmd_friedberg(c, "top"), "unsound", Status::fail));
  CHECK(cmd_friedberg(c, "empty").exit_code() == 3);
  CHECK_THROWS_AS(cmd_friedberg(c, "oracle"), UsageError);
}

TEST_CASE("reports are reproducible") {
  RunConfig c = small();
  c.samples = 4;
  CHECK(render(cmd_check_basis(c), true) == render(cmd_check_basis(c), true));
  CHECK(render(cmd_regularity(c), false) == render(cmd_regularity(c), false));
  RunConfig s = small(InstanceKind::sierpinski);
  s.fuel = 20000;
  CHECK(render(cmd_friedberg(s, "nonhalting"), true) == render(cmd_friedberg(s, "nonhalting"), true));
  const Json j = cmd_check_basis(c).to_json();
  CHECK(j["report_version"] == 1);
  CHECK(j["summary"]["pass"] == 8);
}
