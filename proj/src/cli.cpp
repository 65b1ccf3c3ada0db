#include "bitopo/cli.hpp"

#include <algorithm>
#include <random>

namespace bitopo {

namespace {

std::string side_name(const QmInstance& inst, Side side) { return inst.space(side).name; }

Json echo(const RunConfig& c) {
  return {{"instance", instance_name(c.instance)}, {"seed", c.seed}, {"fuel", c.fuel}, {"samples", c.samples}};
}

Report start(const std::string& command, const RunConfig& c) {
  Report r;
  r.command = command;
  r.config = echo(c);
  return r;
}

// Points with a known value and a probe on `side`, cycling through a seeded pool.
std::vector<Nat> usable_points(const QmInstance& inst, Side side, std::mt19937_64& rng, std::size_t count) {
  std::vector<Nat> out;
  if (count == 0) return out;
  const auto pool = sample_points(inst, rng, 4 * count + 4);
  for (std::size_t k = 0; out.size() < count; ++k) {
    const Nat& i = pool[k % pool.size()];
    auto p = inst.table->get(i);
    if (p->value && p->has(side)) out.push_back(i);
  }
  return out;
}

Dyadic parse_dyadic(const std::string& text, const char* what) {
  try {
    return Dyadic::parse(text);
  } catch (const std::exception& e) {
    throw UsageError(std::string("bad ") + what + " '" + text + "': " + e.what());
  }
}

EffectiveOperator named_operator(const QmInstance& reals, const std::string& name) {
  if (auto F = demo_operator(name, reals)) return *F;
  std::string known;
  for (const auto& n : demo_operator_names()) known += (known.empty() ? "" : ", ") + n;
  throw UsageError("unknown operator '" + name + "' (known: " + known + ")");
}

QmInstance reals_only(const RunConfig& c, const std::string& command) {
  if (c.instance != InstanceKind::reals) throw UsageError(command + " runs on the reals instance only");
  return make_reals();
}

}  // namespace

InstanceKind parse_instance(const std::string& name) {
  if (name == "reals") return InstanceKind::reals;
  if (name == "sierpinski") return InstanceKind::sierpinski;
  throw UsageError("unknown instance '" + name + "' (known: reals, sierpinski)");
}

std::string instance_name(InstanceKind kind) { return kind == InstanceKind::reals ? "reals" : "sierpinski"; }

QmInstance make_instance(InstanceKind kind) { return kind == InstanceKind::reals ? make_reals() : make_sierpinski(); }

std::pair<Side, Nat> parse_ball(const QmInstance& reals, const std::string& spec) {
  Region r;
  try {
    r = parse_region(spec);
  } catch (const std::exception& e) {
    throw UsageError("bad ball '" + spec + "': " + e.what());
  }
  std::pair<Side, Nat> out;
  if (r.lo && !r.hi) out = {Side::left, reals.ball(Side::left, *r.lo + Dyadic(1), 0)};
  else if (r.hi && !r.lo) out = {Side::right, reals.ball(Side::right, *r.hi - Dyadic(1), 0)};
  else throw UsageError("ball '" + spec + "' must be (lo,inf) or (-inf,hi)");
  return out;
}

Report cmd_check_basis(const RunConfig& config) {
  Report rep = start("check-basis", config);
  const QmInstance inst = make_instance(config.instance);
  std::mt19937_64 rng(config.seed);
  for (Side side : {Side::left, Side::right}) {
    const Space& sp = inst.space(side);
    const auto& oracle = *sp.oracle;
    std::size_t k = 0;
    for (const Nat& i : usable_points(inst, side, rng, config.samples)) {
      const Dyadic x = *oracle.value(i);
      const Nat m = ball_containing(inst, side, x, rng);
      const Nat n = ball_containing(inst, side, x, rng);
      CheckRecord rec;
      rec.name = side_name(inst, side) + " #" + std::to_string(k++);
      rec.witness = {{"point", x.to_string()}, {"m", oracle.render(m)}, {"n", oracle.render(n)}};
      auto a = sb_search(sp, i, m, n, config.fuel);
      rec.fuel_used = a.steps;
      if (!a) {
        rec.status = Status::inconclusive;
        rec.witness["exhausted"] = a.steps;
      } else {
        const Region ra = oracle.region(a.witness);
        rec.witness["a"] = nat_str(a.witness);
        rec.witness["ball"] = ra.to_string();
        Json bad = Json::object();
        if (!ra.contains(x)) bad["point_outside"] = ra.to_string();
        if (!sp.precedes(a.witness, m, 1).is_yes() || !ra.subset_of(oracle.region(m))) bad["not_below_m"] = oracle.render(m);
        if (!sp.precedes(a.witness, n, 1).is_yes() || !ra.subset_of(oracle.region(n))) bad["not_below_n"] = oracle.render(n);
        if (!bad.empty()) {
          rec.status = Status::fail;
          rec.witness["counterexample"] = bad;
        }
      }
      rep.add(std::move(rec));
    }
  }
  if (config.instance == InstanceKind::sierpinski) rep.extra["tables"] = sierpinski_tables(inst);
  return rep;
}

Report cmd_regularity(const RunConfig& config, const RegularityOverride& override_witness) {
  Report rep = start("regularity", config);
  const QmInstance inst = make_instance(config.instance);
  std::mt19937_64 rng(config.seed);
  RegularityOptions opt;
  opt.fuel = config.fuel;
  opt.seed = config.seed;
  for (Side side : {Side::left, Side::right}) {
    const BiSpace bi = side == Side::left ? inst.bi : swapped(inst.bi);
    std::vector<RegularityQuery> qs;
    for (const Nat& i : usable_points(inst, side, rng, config.samples))
      qs.push_back({i, ball_containing(inst, side, *bi.tau.oracle->value(i), rng)});
    const RegularityWitness w = override_witness ? override_witness(inst, side) : inst.regularity(side, config.fuel);
    rep.append(check_effective_regularity(bi, w, qs, opt,
                                          side_name(inst, side) + " wrt " + side_name(inst, other(side))));
  }
  return rep;
}

Report cmd_modulus(const RunConfig& config, const std::string& op, const std::string& point, const std::string& target) {
  const QmInstance reals = reals_only(config, "modulus");
  const EffectiveOperator F = named_operator(reals, op);
  const Dyadic x = parse_dyadic(point, "point");
  const auto [side, n] = parse_ball(reals, target);
  const auto& oracle = *reals.space(side).oracle;
  const Region goal = oracle.region(n);
  const Dyadic fx = F.value_map(x);
  if (!goal.contains(fx))
    throw UsageError("target " + goal.to_string() + " does not contain F(" + x.to_string() + ") = " + fx.to_string());

  Report rep = start("modulus", config);
  rep.config["operator"] = op;
  rep.config["point"] = x.to_string();
  rep.config["target"] = goal.to_string();
  CheckRecord rec;
  rec.name = "modulus " + side_name(reals, side);
  rec.witness = {{"image", fx.to_string()}};
  auto a = modulus(F, side, reals.point(x), n, config.fuel);
  rec.fuel_used = a.steps;
  if (!a) {
    rec.status = Status::inconclusive;
    rec.witness["exhausted"] = a.steps;
  } else {
    const Region ra = oracle.region(a.witness);
    const ImageSet img = F.interval_ext(side, a.witness);
    rec.witness["code"] = nat_str(a.witness);
    rec.witness["ball"] = ra.to_string();
    rec.witness["image_of_ball"] = img.to_string();
    if (!ra.contains(x) || !img.subset_of(goal)) {
      rec.status = Status::fail;
      rec.witness["counterexample"] = ra.contains(x) ? Json{{"image_escapes", img.to_string()}}
                                                     : Json{{"point_outside", ra.to_string()}};
    }
  }
  rep.add(std::move(rec));
  return rep;
}

CheckRecord check_witness_point(const EffectiveOperator& F, Side side, const NonInclusionWitness& w,
                                const RegularityWitness& codomain_regularity, const Nat& i, const Nat& n, const Nat& m,
                                const Outcome& r, std::size_t t_prefix) {
  const auto& dom = *F.domain.space(side).oracle;
  const auto& cod = *F.codomain.space(side).oracle;
  const auto& cod_other = *F.codomain.space(other(side)).oracle;
  CheckRecord rec;
  rec.name = "witness " + F.name;
  rec.fuel_used = r.steps;
  rec.witness = {{"n", dom.render(n)}, {"m", cod.render(m)}};
  if (!r) {
    rec.status = Status::inconclusive;
    rec.witness["exhausted"] = r.steps;
    return rec;
  }
  const Dyadic z = *dom.value(r.witness);
  const Dyadic fz = F.value_map(z);
  rec.witness["z"] = z.to_string();
  rec.witness["F(z)"] = fz.to_string();
  Json bad = Json::object();
  if (!dom.region(n).contains(z)) bad["outside_n"] = dom.render(n);

  auto sp = w.s_prime(i, m);
  if (!sp) {
    bad["no_s_prime"] = true;
  } else {
    rec.witness["s_prime"] = cod.render(sp.witness);
    if (cod.region(sp.witness).contains(fz)) bad["inside_s_prime"] = cod.render(sp.witness);
  }

  auto fi = apply_operator(F, i, 100000);
  std::optional<Nat> cover;
  if (fi) {
    const Enumerator e = codomain_regularity.t(fi.witness, m).enumerator();
    for (std::uint64_t k = 0; k < t_prefix && !cover; ++k)
      if (auto c = e(k); c && cod_other.region(*c).contains(fz)) cover = *c;
  }
  if (cover) rec.witness["t_ball"] = cod_other.render(*cover);
  else bad["not_in_t_cover"] = {{"checked", t_prefix}};

  if (!bad.empty()) {
    rec.status = Status::fail;
    rec.witness["counterexample"] = bad;
  }
  return rec;
}

Report cmd_witness(const RunConfig& config, const std::string& op, const std::string& point, const std::string& n_ball,
                   const std::string& m_ball) {
  const QmInstance reals = reals_only(config, "witness");
  const EffectiveOperator F = named_operator(reals, op);
  const Dyadic x = parse_dyadic(point, "point");
  const auto [side, n] = parse_ball(reals, n_ball);
  const auto [m_side, m] = parse_ball(reals, m_ball);
  if (side != m_side) throw UsageError("n-ball and m-ball must be of the same kind");
  const auto& oracle = *reals.space(side).oracle;
  if (!oracle.region(n).contains(x)) throw UsageError("n-ball " + oracle.render(n) + " does not contain " + x.to_string());
  const Dyadic fx = F.value_map(x);
  if (!oracle.region(m).contains(fx))
    throw UsageError("m-ball " + oracle.render(m) + " does not contain F(" + x.to_string() + ") = " + fx.to_string());

  Report rep = start("witness", config);
  rep.config["operator"] = op;
  rep.config["point"] = x.to_string();
  rep.config["n_ball"] = oracle.render(n);
  rep.config["m_ball"] = oracle.render(m);
  const RegularityWitness rw = reals.regularity(side, config.fuel);
  const auto w = build_noninclusion_witness(F, side, rw, FuelLadder{1024, config.fuel}, config.fuel);
  const Nat i = reals.point(x);
  rep.add(check_witness_point(F, side, w, rw, i, n, m, w.r(i, n, m, config.fuel)));
  return rep;
}

std::vector<Code> probe_battery(Registry& registry) {
  std::vector<Code> out;
  for (std::uint64_t k = 1; k <= 10; ++k) out.push_back(halting_after(registry, k));
  for (int k = 0; k < 10; ++k) out.push_back(never_halting(registry));
  return out;
}

std::vector<std::string> bundled_candidate_names() { return {"empty", "first-probe", "bot-only", "nonhalting", "top"}; }

std::optional<BotCandidate> bundled_candidate(const std::string& name, std::uint64_t seed) {
  const Nat bot = PointTable::base_index(0);
  if (name == "empty") return BotCandidate([](const std::vector<Nat>&) { return Enumerator::empty(); });
  if (name == "first-probe")
    return BotCandidate([bot](const std::vector<Nat>& pts) {
      std::vector<Nat> xs{bot};
      if (!pts.empty()) xs.push_back(pts.front());
      return Enumerator::of(xs);
    });
  if (name == "bot-only") return BotCandidate([bot](const std::vector<Nat>&) { return Enumerator::of({bot}); });
  if (name == "nonhalting")
    return BotCandidate([bot, seed](const std::vector<Nat>& pts) {
      std::vector<Nat> xs(pts.begin() + static_cast<std::ptrdiff_t>(pts.size() / 2), pts.end());
      std::mt19937_64 rng(seed);
      std::shuffle(xs.begin(), xs.end(), rng);
      xs.insert(xs.begin() + static_cast<std::ptrdiff_t>(xs.size() / 2), bot);
      return Enumerator::of(xs);
    });
  if (name == "top")
    return BotCandidate([](const std::vector<Nat>&) { return Enumerator::of({PointTable::base_index(1)}); });
  return std::nullopt;
}

Report cmd_friedberg(const RunConfig& config, const std::optional<std::string>& candidate) {
  std::optional<BotCandidate> cand;
  if (candidate) {
    cand = bundled_candidate(*candidate, config.seed);
    if (!cand) {
      std::string known;
      for (const auto& n : bundled_candidate_names()) known += (known.empty() ? "" : ", ") + n;
      throw UsageError("unknown candidate '" + *candidate + "' (known: " + known + ")");
    }
  }
  Report rep = start("friedberg", config);
  rep.config["instance"] = "sierpinski";
  if (candidate) rep.config["candidate"] = *candidate;
  const QmInstance s = make_sierpinski();
  const auto probes = cand ? probe_battery(*s.registry) : std::vector<Code>{};
  rep.append(friedberg_diagnostic(s, cand, probes, config.fuel));
  return rep;
}

std::string render(const Report& report, bool json) {
  return json ? report.to_json().dump(2) + "\n" : report.to_text();
}

}  // namespace bitopo
