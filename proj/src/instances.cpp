#include "bitopo/instances.hpp"

#include <algorithm>

namespace bitopo {

RegularityWitness QmInstance::regularity(Side side, Fuel fuel) const {
  return regularity_witness(space(side), metric(side), fuel);
}

Enumerator dyadic_base_order() {
  // Block h lists the dyadics u * 2^-l (u odd unless l = 0) with l <= h and
  // |u| < 2^h that no earlier block has: level h with |u| < 2^h, then
  // integers, then levels 1..h-1, both with 2^(h-1) <= |u| < 2^h.
  return Enumerator([](std::uint64_t k) -> std::optional<Nat> {
    if (k == 0) return encode(Dyadic(0));
    using u128 = unsigned __int128;
    u128 rest = k - 1;
    for (std::int64_t h = 1;; ++h) {
      const u128 half = u128(1) << (h - 1), full = u128(1) << h;
      auto signed_at = [](u128 magnitude, u128 t) {
        const Integer m(static_cast<std::uint64_t>(magnitude));
        return t % 2 == 0 ? m : Integer(-m);
      };
      if (rest < full) return encode(Dyadic(signed_at(2 * (rest / 2) + 1, rest), -h));
      rest -= full;
      if (rest < full) return encode(Dyadic(signed_at(half + rest / 2, rest), 0));
      rest -= full;
      for (std::int64_t l = 1; l < h; ++l) {
        if (rest < half) return encode(Dyadic(signed_at(half + 1 + 2 * (rest / 2), rest), -l));
        rest -= half;
      }
    }
  });
}

QmInstance make_reals(std::shared_ptr<Registry> registry) {
  QuasiMetric q;
  q.name = "delta_U";
  q.kind = MetricKind::upper;
  q.base = [](const Nat& a) { return dyadic_decode(a); };
  q.base_code = [](const Dyadic& y) { return encode(y); };
  q.base_order = dyadic_base_order();
  auto table = std::make_shared<PointTable>(q);
  QmInstance inst{"reals", registry, table, induced_bispace(table, registry)};
  inst.bi.tau.name = "U";
  inst.bi.sigma.name = "L";
  return inst;
}

QmInstance make_sierpinski(std::shared_ptr<Registry> registry) {
  QuasiMetric q;
  q.name = "delta_S";
  q.kind = MetricKind::upper;
  q.base = [](const Nat& a) { return a == 0 ? Dyadic(0) : Dyadic(1); };
  q.base_code = [](const Dyadic& y) { return y.is_zero() ? Nat(0) : Nat(1); };
  q.base_order = Enumerator::naturals();
  q.carrier = std::make_shared<const std::vector<Dyadic>>(std::vector<Dyadic>{Dyadic(0), Dyadic(1)});
  // {top} inside S, and conjugately {bot} inside S, at any radii.
  q.extra_precedes = [](MetricKind kind, const Nat& a, const Nat& a2) {
    return kind == MetricKind::upper ? (a != 0 && a2 == 0) : (a == 0 && a2 != 0);
  };
  auto table = std::make_shared<PointTable>(q);
  QmInstance inst{"sierpinski", registry, table, induced_bispace(table, registry)};
  inst.bi.tau.name = "S.tau";
  inst.bi.sigma.name = "S.sigma";
  return inst;
}

Code register_sequence(Registry& registry, std::function<Dyadic(std::uint64_t)> seq, std::string name) {
  return registry.add(
      [seq = std::move(seq)](const Nat& k, Fuel fuel) {
        if (fuel == 0) return Outcome::exhausted(0);
        return Outcome::confirmed(encode(seq(to_u64(k))), 1);
      },
      std::move(name));
}

namespace {

constexpr std::uint64_t kBracketCap = 512;

struct Bracket {
  std::shared_ptr<Registry> registry;
  Code lower, upper;
  std::shared_ptr<WriteOnceCache<std::pair<bool, std::uint64_t>, Dyadic>> cache =
      std::make_shared<WriteOnceCache<std::pair<bool, std::uint64_t>, Dyadic>>();

  Dyadic at(bool lo, std::uint64_t k) const {
    return cache->get_or_make({lo, k}, [&] {
      auto r = registry->apply(lo ? lower : upper, k, 1);
      if (!r) throw std::runtime_error("bracket sequence did not produce a value");
      return dyadic_decode(r.witness);
    });
  }
};

// "y > beta - r" certified by lower bounds, "y < beta + r" by upper bounds;
// refuted by the opposite bound.
Probe bracket_probe(const QuasiMetric& q, Bracket br, bool above) {
  return [q, br, above](const Nat& a, std::int64_t e, Fuel budget) {
    if (budget == 0) return Verdict::unknown(0);
    const std::uint64_t k = std::min<std::uint64_t>(budget, kBracketCap);
    const Dyadic r = Dyadic::pow2(-e);
    const Dyadic c = q.base(a);
    const bool ok = above ? br.at(true, k) > c - r : br.at(false, k) < c + r;
    if (ok) return Verdict::yes(k);
    // The other end of the bracket may already rule the ball out.
    const bool out = above ? br.at(false, k) <= c - r : br.at(true, k) >= c + r;
    return out ? Verdict::no(k) : Verdict::unknown(budget);
  };
}

Enumerator bracket_leads(Bracket br, bool lower) {
  return Enumerator([br, lower](std::uint64_t s) -> std::optional<Nat> {
    auto [k, e] = unpair(s);
    return pair(encode(br.at(lower, std::min<std::uint64_t>(to_u64(k), kBracketCap))), e);
  });
}

}  // namespace

Nat make_creal(const QmInstance& reals, Code lower, Code upper, std::optional<Dyadic> truth) {
  const QuasiMetric& q = reals.metric();
  Bracket br{reals.registry, lower, upper};
  // upper kind: left probe is y > beta - r, right probe is y < beta + r.
  const bool left_above = q.kind == MetricKind::upper;
  QPoint p;
  p.probe[0] = bracket_probe(q, br, left_above);
  p.probe[1] = bracket_probe(q, br, !left_above);
  p.leads[0] = bracket_leads(br, left_above);
  p.leads[1] = bracket_leads(br, !left_above);
  p.value = truth;
  p.label = "creal" + (truth ? " " + truth->to_string() : std::string());
  return reals.table->add(std::move(p));
}

Nat creal_around(const QmInstance& reals, const Dyadic& v) {
  auto& reg = *reals.registry;
  auto lo = register_sequence(reg, [v](std::uint64_t k) { return v - Dyadic::pow2(-static_cast<std::int64_t>(k)); }, "lower");
  auto hi = register_sequence(reg, [v](std::uint64_t k) { return v + Dyadic::pow2(-static_cast<std::int64_t>(k)); }, "upper");
  return make_creal(reals, lo, hi, v);
}

Nat halting_point(const QmInstance& sierpinski, Code p, std::optional<bool> truth) {
  auto reg = sierpinski.registry;
  QPoint pt;
  pt.probe[0] = [reg, p](const Nat& a, std::int64_t, Fuel budget) {
    if (a == 0) return Verdict::yes(1);
    auto r = reg->apply(p, 0, budget);
    return r ? Verdict::yes(r.steps) : Verdict::unknown(budget);
  };
  pt.leads[0] = Enumerator([reg, p](std::uint64_t s) -> std::optional<Nat> {
    auto [flag, k] = unpair(s);
    if (flag == 0) return pair(0, k);
    if (flag == 1 && reg->apply(p, 0, to_u64(k))) return pair(1, k);
    return std::nullopt;
  });
  if (truth) pt.value = *truth ? Dyadic(1) : Dyadic(0);
  pt.label = "halting(" + reg->name(p) + ")";
  return sierpinski.table->add(std::move(pt));
}

Code halting_after(Registry& registry, std::uint64_t steps) {
  return registry.add(
      [steps](const Nat&, Fuel fuel) { return fuel >= steps ? Outcome::confirmed(0, steps) : Outcome::exhausted(fuel); },
      "halt@" + std::to_string(steps));
}

Code never_halting(Registry& registry) {
  return registry.add([](const Nat&, Fuel fuel) { return search(Enumerator::empty(), [](const Nat&, Fuel) { return Verdict::yes(); }, fuel); },
                      "loop");
}

std::vector<Nat> sample_points(const QmInstance& inst, std::mt19937_64& rng, std::size_t count) {
  std::vector<Nat> out;
  const auto& q = inst.metric();
  if (q.carrier) {
    auto& reg = *inst.registry;
    for (std::size_t k = 0; k < count; ++k) {
      switch (k % 4) {
        case 0: out.push_back(PointTable::base_index(0)); break;
        case 1: out.push_back(PointTable::base_index(1 + rng() % 7)); break;
        case 2: out.push_back(halting_point(inst, halting_after(reg, rng() % 16), true)); break;
        default: out.push_back(PointTable::base_index(rng() % 2)); break;
      }
    }
    return out;
  }
  for (std::size_t k = 0; k < count; ++k) {
    const Dyadic v = random_dyadic(rng, 3, 3);
    out.push_back(k % 3 == 2 ? creal_around(inst, v) : inst.point(v));
  }
  return out;
}

Nat ball_containing(const QmInstance& inst, Side side, const Dyadic& y, std::mt19937_64& rng) {
  const QuasiMetric q = inst.metric(side);
  for (int tries = 0; tries < 10000; ++tries) {
    const Dyadic c = q.carrier ? (*q.carrier)[rng() % q.carrier->size()] : y + random_dyadic(rng, 1, 3);
    const auto e = static_cast<std::int64_t>(rng() % 4);
    if (!q.ball(c, e).contains(y)) continue;
    const Nat code = q.carrier && !c.is_zero() ? Nat(1 + rng() % 7) : q.base_code(c);
    return pair(code, e);
  }
  throw std::logic_error("no ball found around " + y.to_string());
}

Json sierpinski_tables(const QmInstance& s) {
  const QuasiMetric& q = s.metric();
  const QuasiMetric qc = conjugate(q);
  auto name = [](const Dyadic& v) { return v.is_zero() ? std::string("bot") : std::string("top"); };
  const std::vector<Dyadic> pts{Dyadic(0), Dyadic(1)};
  Json d = Json::array(), dc = Json::array(), basis = Json::array(), prec = Json::array();
  for (const auto& y : pts)
    for (const auto& z : pts) {
      d.push_back({{"y", name(y)}, {"z", name(z)}, {"delta", q.delta(y, z).to_string()}});
      dc.push_back({{"y", name(y)}, {"z", name(z)}, {"delta_c", qc.delta(y, z).to_string()}});
    }
  for (int a : {0, 3}) {
    const Region r = q.ball_of(pair(a, 5));
    std::string set = r.contains(Dyadic(0)) ? "S" : "{top}";
    basis.push_back({{"code", "<" + std::to_string(a) + ",5>"}, {"set", set}});
  }
  for (int a : {0, 2})
    for (int a2 : {0, 2}) {
      const bool holds = s.bi.tau.precedes(pair(a, 1), pair(a2, 1), 1).is_yes();
      prec.push_back({{"a", a}, {"a_prime", a2}, {"precedes", holds}});
    }
  return {{"delta", d}, {"delta_c", dc}, {"basis", basis}, {"precedes_equal_radii", prec}};
}

}  // namespace bitopo
