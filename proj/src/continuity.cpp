#include "bitopo/continuity.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <random>

namespace bitopo {

bool ImageSet::empty() const {
  if (finite) return finite->empty();
  if (!lo || !hi || *lo < *hi) return false;
  return !(*lo == *hi && lo_closed && hi_closed);
}

bool ImageSet::contains(const Dyadic& y) const {
  if (finite) return std::find(finite->begin(), finite->end(), y) != finite->end();
  if (lo && (lo_closed ? y < *lo : y <= *lo)) return false;
  if (hi && (hi_closed ? y > *hi : y >= *hi)) return false;
  return true;
}

bool ImageSet::subset_of(const Region& r) const {
  if (empty()) return true;
  if (finite) return std::all_of(finite->begin(), finite->end(), [&](const Dyadic& y) { return r.contains(y); });
  if (r.carrier) return lo && hi && *lo == *hi && r.contains(*lo);
  if (r.lo && !(lo && (lo_closed ? *lo > *r.lo : *lo >= *r.lo))) return false;
  if (r.hi && !(hi && (hi_closed ? *hi < *r.hi : *hi <= *r.hi))) return false;
  return true;
}

std::string ImageSet::to_string() const {
  if (finite) {
    std::string out = "{";
    for (std::size_t k = 0; k < finite->size(); ++k) out += (k ? "," : "") + (*finite)[k].to_string();
    return out + "}";
  }
  return std::string(lo_closed ? "[" : "(") + (lo ? lo->to_string() : "-inf") + "," + (hi ? hi->to_string() : "inf") +
         (hi_closed ? "]" : ")");
}

ImageSet RealMap::image(const Region& r) const {
  ImageSet s;
  if (r.lo && r.hi && !(*r.lo < *r.hi)) {
    s.finite.emplace();
    return s;
  }
  if (r.lo) {
    s.lo = at(*r.lo);
    s.lo_closed = flat_right(*r.lo);
  } else {
    s.lo = low.value;
    s.lo_closed = low.value && low.attained;
  }
  if (r.hi) {
    s.hi = at(*r.hi);
    s.hi_closed = flat_left(*r.hi);
  } else {
    s.hi = high.value;
    s.hi_closed = high.value && high.attained;
  }
  return s;
}

RealMap affine_map(std::string name, Dyadic alpha, Dyadic beta) {
  if (alpha.sign() <= 0) throw std::invalid_argument("affine_map: slope must be positive");
  RealMap m;
  m.name = std::move(name);
  m.at = [alpha, beta](const Dyadic& x) { return alpha * x + beta; };
  m.flat_right = m.flat_left = [](const Dyadic&) { return false; };
  return m;
}

RealMap identity_map() { return affine_map("identity", Dyadic(1), Dyadic(0)); }
RealMap add_const(const Dyadic& c) { return affine_map("add_const(" + c.to_string() + ")", Dyadic(1), c); }
RealMap scale2() { return affine_map("scale2", Dyadic(2), Dyadic(0)); }

RealMap max0() {
  RealMap m;
  m.name = "max0";
  m.at = [](const Dyadic& x) { return max(x, Dyadic(0)); };
  m.flat_right = [](const Dyadic& x) { return x.sign() < 0; };
  m.flat_left = [](const Dyadic& x) { return x.sign() <= 0; };
  m.low = {Dyadic(0), true};
  return m;
}

RealMap constant_map(const Dyadic& c) {
  RealMap m;
  m.name = "constant(" + c.to_string() + ")";
  m.at = [c](const Dyadic&) { return c; };
  m.flat_right = m.flat_left = [](const Dyadic&) { return true; };
  m.low = m.high = {c, true};
  return m;
}

bool EffectiveOperator::maps_into(Side side, const Nat& a, const Nat& n) const {
  if (!interval_ext) return false;
  try {
    return interval_ext(side, a).subset_of(codomain.space(side).oracle->region(n));
  } catch (const std::out_of_range&) {
    return false;
  }
}

namespace {

QuasiMetric side_metric(const QuasiMetric& q, int s) { return s == 0 ? q : conjugate(q); }

QPoint image_point(const std::shared_ptr<const QPoint>& src, const QuasiMetric& q, const RealMap& F) {
  QPoint p;
  for (int s = 0; s < 2; ++s) {
    if (!src->probe[s]) continue;
    const QuasiMetric qs = side_metric(q, s);
    const Enumerator leads = src->leads[s];
    p.probe[s] = [qs, leads, F](const Nat& b, std::int64_t e, Fuel budget) {
      const Region target = qs.ball(qs.base(b), e);
      auto hit = search(
          leads,
          [&](const Nat& c, Fuel) {
            auto e2 = radius_exponent(unpair(c).second);
            return Verdict::decide(e2 && F.image(qs.ball_of(c)).subset_of(target));
          },
          budget);
      return hit ? Verdict::yes(hit.steps) : Verdict::unknown(hit.steps);
    };
    p.leads[s] = Enumerator([qs, leads, F](std::uint64_t k) -> std::optional<Nat> {
      auto [j, e] = unpair(k);
      auto c = leads(to_u64(j));
      if (!c || !radius_exponent(unpair(*c).second)) return std::nullopt;
      const ImageSet img = F.image(qs.ball_of(*c));
      const auto& end = qs.kind == MetricKind::upper ? img.lo : img.hi;
      if (!end) return std::nullopt;
      return pair(encode(*end), e);
    });
  }
  if (src->value) p.value = F.at(*src->value);
  p.label = F.name + "(" + src->label + ")";
  return p;
}

}  // namespace

EffectiveOperator real_operator(const QmInstance& reals, const RealMap& F) {
  const QuasiMetric q = reals.metric();
  auto table = reals.table;
  auto cache = std::make_shared<WriteOnceCache<Nat, Nat>>();
  EffectiveOperator op;
  op.name = F.name;
  op.domain = reals;
  op.codomain = reals;
  op.f = reals.registry->add(
      [table, q, F, cache](const Nat& i, Fuel fuel) -> Outcome {
        if (fuel == 0) return Outcome::exhausted(0);
        auto [tag, a] = unpair(i);
        if (tag == 0) return Outcome::confirmed(PointTable::base_index(q.base_code(F.at(q.base(a)))), 1);
        auto src = table->find(i);
        if (!src) return Outcome::exhausted(fuel);
        return Outcome::confirmed(cache->get_or_make(i, [&] { return table->add(image_point(src, q, F)); }), 1);
      },
      "F:" + F.name);
  op.interval_ext = [q, F](Side s, const Nat& a) {
    return F.image(side_metric(q, static_cast<int>(s)).ball_of(a));
  };
  op.value_map = F.at;
  return op;
}

EffectiveOperator sign_step(const QmInstance& reals, const QmInstance& sierpinski) {
  auto reg = reals.registry;
  auto table = reals.table;
  const Space tau = reals.bi.tau;
  const Nat positive = reals.ball(Side::left, Dyadic(1), 0);  // (0, inf)
  const QmInstance s = sierpinski;
  auto cache = std::make_shared<WriteOnceCache<Nat, Nat>>();
  EffectiveOperator op;
  op.name = "sign_step";
  op.domain = reals;
  op.codomain = sierpinski;
  auto make_point = [reg, tau, positive, s](const Nat& i, const std::shared_ptr<const QPoint>& src) {
    Code p = reg->add(
        [tau, positive, i](const Nat&, Fuel b) {
          auto v = tau.member(i, positive, b);
          return v.is_yes() ? Outcome::confirmed(0, v.steps) : Outcome::exhausted(b);
        },
        "positive?" + i.str());
    std::optional<bool> truth;
    if (src->value) truth = src->value->sign() > 0;
    return halting_point(s, p, truth);
  };
  op.f = reg->add(
      [table, make_point, cache](const Nat& i, Fuel fuel) -> Outcome {
        if (fuel == 0) return Outcome::exhausted(0);
        auto src = table->find(i);
        if (!src) return Outcome::exhausted(fuel);
        return Outcome::confirmed(cache->get_or_make(i, [&] { return make_point(i, src); }), 1);
      },
      "sign_step");
  const QuasiMetric q = reals.metric();
  op.interval_ext = [q](Side side, const Nat& a) {
    const Region r = side_metric(q, static_cast<int>(side)).ball_of(a);
    ImageSet img;
    img.finite.emplace();
    if (!r.lo || r.lo->sign() < 0) img.finite->push_back(Dyadic(0));
    if (!r.hi || r.hi->sign() > 0) img.finite->push_back(Dyadic(1));
    return img;
  };
  op.value_map = [](const Dyadic& y) { return y.sign() > 0 ? Dyadic(1) : Dyadic(0); };
  return op;
}

std::vector<std::string> demo_operator_names() { return {"identity", "add_const", "scale2", "max0"}; }

std::optional<EffectiveOperator> demo_operator(const std::string& name, const QmInstance& reals) {
  if (name == "identity") return real_operator(reals, identity_map());
  if (name == "add_const") return real_operator(reals, add_const(Dyadic(1)));
  if (name == "scale2") return real_operator(reals, scale2());
  if (name == "max0") return real_operator(reals, max0());
  return std::nullopt;
}

Outcome apply_operator(const EffectiveOperator& F, const Nat& i, Fuel fuel) {
  return F.domain.registry->apply(F.f, i, fuel);
}

namespace {

constexpr std::size_t kLoggedRejections = 3;

Outcome certified_search(const EffectiveOperator& F, Side side, const Nat& i, const Nat& n, Fuel fuel,
                         std::vector<Nat>* rejected) {
  return search(
      F.domain.space(side).neighbourhood(i),
      [&](const Nat& a, Fuel) {
        if (F.maps_into(side, a, n)) return Verdict::yes(1);
        if (rejected && rejected->size() < kLoggedRejections &&
            std::find(rejected->begin(), rejected->end(), a) == rejected->end())
          rejected->push_back(a);
        return Verdict::no(1);
      },
      fuel);
}

Fuel left_over(Fuel fuel, std::uint64_t used) { return fuel > used ? fuel - used : 0; }

}  // namespace

Outcome modulus(const EffectiveOperator& F, Side side, const Nat& i, const Nat& n, Fuel fuel,
                std::vector<RejectedCandidate>* log) {
  if (!F.interval_ext) throw std::logic_error(F.name + ": modulus needs interval_ext");
  auto fi = apply_operator(F, i, fuel);
  if (!fi) return fi;
  std::uint64_t used = fi.steps;
  auto pre = F.codomain.space(side).member(fi.witness, n, left_over(fuel, used));
  used += pre.steps;
  if (!pre.is_yes()) return Outcome::exhausted(std::min<std::uint64_t>(used, fuel));
  std::vector<Nat> rejected;
  auto hit = certified_search(F, side, i, n, left_over(fuel, used), log ? &rejected : nullptr);
  used += hit.steps;
  if (log && !rejected.empty()) {
    constexpr Fuel kWitnessFuel = 20000;
    auto w = build_noninclusion_witness(F, side, F.codomain.regularity(side, kWitnessFuel), {256, kWitnessFuel},
                                        kWitnessFuel);
    for (const auto& a : rejected) log->push_back({a, w.r(i, a, n, kWitnessFuel)});
  }
  return hit ? Outcome::confirmed(hit.witness, used) : Outcome::exhausted(used);
}

PointwiseModulus modulus_of(const EffectiveOperator& F, Side side) {
  return [F, side](const Nat& i, const Nat& n, Fuel fuel) { return modulus(F, side, i, n, fuel); };
}

NonInclusionWitness build_noninclusion_witness(const EffectiveOperator& F, Side side,
                                               const RegularityWitness& codomain_regularity, FuelLadder ladder,
                                               Fuel s_fuel) {
  auto reg = F.domain.registry;
  const Code f = F.f;
  const Space dom = F.domain.space(side);
  const Space cod = F.codomain.space(side);
  const Space cod_other = F.codomain.space(other(side));
  const RegularityWitness rw = codomain_regularity;

  NonInclusionWitness w;
  w.s_prime = [reg, f, rw, s_fuel](const Nat& i, const Nat& m) -> Outcome {
    auto fi = reg->apply(f, i, s_fuel);
    if (!fi) return fi;
    return rw.s(fi.witness, m, s_fuel);
  };
  auto s_prime = w.s_prime;
  w.s = [reg, f, cod, s_prime](const Nat& i, const Nat& m) {
    auto target = s_prime(i, m);
    if (!target) return CeSet::listed(Enumerator::empty());
    const Nat b = target.witness;
    return CeSet::tested([reg, f, cod, b](const Nat& j, Fuel budget) {
      auto fj = reg->apply(f, j, budget);
      if (!fj) return Verdict::unknown(fj.steps);
      auto v = cod.member(fj.witness, b, budget);
      v.steps += fj.steps;
      return v;
    });
  };
  w.r = [reg, f, dom, cod_other, rw, ladder, s_fuel](const Nat& i, const Nat& n, const Nat& m,
                                                     Fuel fuel) -> Outcome {
    auto fi = reg->apply(f, i, s_fuel);
    if (!fi) return Outcome::exhausted(fi.steps);
    const LacombeSet t = rw.t(fi.witness, m);
    auto test = [&](const Nat& a, Fuel b) {
      const Nat j = dom.dense(a);
      auto v = dom.member(j, n, b);
      if (v.is_no()) return v;
      return both(v, [&] {
        auto fj = reg->apply(f, j, b);
        if (!fj) return Verdict::unknown(fj.steps);
        auto hit = lacombe_member(cod_other, t, fj.witness, b);
        return hit ? Verdict::yes(hit.steps + fj.steps) : Verdict::unknown(hit.steps + fj.steps);
      });
    };
    std::uint64_t used = fi.steps;
    const Fuel top = std::min(fuel, ladder.cap);
    for (Fuel step = std::min(std::max<Fuel>(ladder.start, 1), top);; step = std::min(2 * step, top)) {
      auto out = search(dom.dense_order, test, step);
      used += out.steps;
      if (out) return Outcome::confirmed(dom.dense(out.witness), used);
      if (step >= top) return Outcome::exhausted(used);
    }
  };
  return w;
}

PointwiseModulus pointwise_from_continuous(const EffectiveOperator& F, Side side, PreimageMap g) {
  const Space dom = F.domain.space(side);
  return [dom, g = std::move(g)](const Nat& i, const Nat& n, Fuel fuel) { return lacombe_member(dom, g(n), i, fuel); };
}

PreimageMap continuous_from_pointwise(const EffectiveOperator& F, Side side, PointwiseModulus h) {
  auto reg = F.domain.registry;
  const Code f = F.f;
  const Space dom = F.domain.space(side);
  const Space cod = F.codomain.space(side);
  return [reg, f, dom, cod, h = std::move(h)](const Nat& n) {
    auto image_in = [reg, f, dom, cod, n](const Nat& a, Fuel b) {
      auto fj = reg->apply(f, dom.dense(a), b);
      if (!fj) return Verdict::unknown(fj.steps);
      auto v = cod.member(fj.witness, n, b);
      v.steps += fj.steps;
      return v;
    };
    return CeSet::image(
        dom.dense_order,
        [dom, h, n, image_in](const Nat& a, Fuel b) {
          auto v = image_in(a, b);
          if (!v.is_yes()) return Outcome::exhausted(v.steps);
          auto out = h(dom.dense(a), n, b);
          out.steps += v.steps;
          return out;
        },
        image_in);
  };
}

namespace {

// Memo of preimage tests for one point: exact (code, budget) verdicts, plus
// the step count of confirmed codes, valid at every budget from there on.
struct PreimageMemo {
  std::mutex mutex;
  std::map<std::pair<Nat, Fuel>, Verdict> tried;
  std::map<Nat, std::uint64_t> confirmed;
};

Probe rebuilt_probe(const Space& dom, const Space& cod, const PreimageMap& g, const Nat& i) {
  auto memo = std::make_shared<PreimageMemo>();
  auto in_preimage = [dom, g, i, memo](const Nat& c, Fuel b) {
    {
      std::lock_guard lock(memo->mutex);
      if (auto it = memo->confirmed.find(c); it != memo->confirmed.end() && it->second <= b)
        return Verdict::yes(it->second);
      if (auto it = memo->tried.find({c, b}); it != memo->tried.end()) return it->second;
    }
    auto o = lacombe_member(dom, g(c), i, b);
    const Verdict v = o ? Verdict::yes(o.steps) : Verdict::unknown(o.steps);
    std::lock_guard lock(memo->mutex);
    if (o) memo->confirmed.emplace(c, o.steps);
    else memo->tried.emplace(std::make_pair(c, b), v);
    return v;
  };
  return [cod, in_preimage](const Nat& b, std::int64_t e, Fuel budget) {
    auto hit = search(cod.refine(pair(b, e)), in_preimage, budget);
    return hit ? Verdict::yes(hit.steps) : Verdict::unknown(hit.steps);
  };
}

}  // namespace

EffectiveOperator operator_from_continuous(const QmInstance& domain, const QmInstance& codomain, PreimageMap g_left,
                                           std::optional<PreimageMap> g_right, std::string name) {
  std::array<std::optional<PreimageMap>, 2> g{std::move(g_left), std::move(g_right)};
  auto cache = std::make_shared<WriteOnceCache<Nat, Nat>>();
  auto make_point = [domain, codomain, g](const Nat& i) {
    QPoint p;
    for (int s = 0; s < 2; ++s)
      if (g[s])
        p.probe[s] =
            rebuilt_probe(domain.space(static_cast<Side>(s)), codomain.space(static_cast<Side>(s)), *g[s], i);
    p.label = "rebuilt";
    return codomain.table->add(std::move(p));
  };
  EffectiveOperator op;
  op.name = name;
  op.domain = domain;
  op.codomain = codomain;
  op.f = domain.registry->add(
      [domain, make_point, cache](const Nat& i, Fuel fuel) -> Outcome {
        if (fuel == 0) return Outcome::exhausted(0);
        if (!domain.table->find(i)) return Outcome::exhausted(fuel);
        return Outcome::confirmed(cache->get_or_make(i, [&] { return make_point(i); }), 1);
      },
      std::move(name));
  return op;
}

namespace {

std::optional<Dyadic> oracle_counterexample(const EffectiveOperator& F, const Space& dom, const Region& source,
                                            const Region& target, std::uint64_t steps) {
  for (std::uint64_t k = 0; k < steps; ++k) {
    auto a = dom.dense_order(k);
    if (!a) continue;
    auto z = dom.oracle->value(dom.dense(*a));
    if (z && source.contains(*z) && !target.contains(F.value_map(*z))) return z;
  }
  return std::nullopt;
}

CheckRecord check_pair_at(const EffectiveOperator& F, Side side, const Nat& i, const Nat& n,
                          const BicontinuityOptions& opt, std::mt19937_64& rng, std::string name) {
  constexpr std::uint64_t kOracleScan = 20000;
  const Space& dom = F.domain.space(side);
  const Space& cod = F.codomain.space(side);
  CheckRecord rec;
  rec.name = std::move(name);
  Json& wit = rec.witness;
  const Dyadic x = *dom.oracle->value(i);
  const Region target = cod.oracle->region(n);
  wit["point"] = x.to_string();
  wit["image"] = F.value_map(x).to_string();
  wit["ball"] = cod.oracle->render(n);

  auto fi = apply_operator(F, i, opt.fuel);
  rec.fuel_used += fi.steps;
  if (!fi) {
    rec.status = Status::inconclusive;
    wit["reason"] = "f exhausted";
    return rec;
  }
  const bool has_probe = F.codomain.table->get(fi.witness)->has(side);
  auto a = certified_search(F, side, i, n, opt.fuel, nullptr);
  rec.fuel_used += a.steps;

  if (a) {
    const Region ra = dom.oracle->region(a.witness);
    wit["modulus"] = dom.oracle->render(a.witness);
    if (!ra.contains(x)) {
      rec.status = Status::fail;
      wit["counterexample"] = {{"point_outside_modulus", x.to_string()}};
      return rec;
    }
    for (const auto& z : ra.interior_samples(rng, 4))
      if (!target.contains(F.value_map(z))) {
        rec.status = Status::fail;
        wit["counterexample"] = {{"z", z.to_string()}, {"F(z)", F.value_map(z).to_string()}};
        return rec;
      }
  } else {
    Json family = Json::array();
    Enumerator nb = dom.neighbourhood(i);
    std::vector<Nat> seen;
    for (std::uint64_t k = 0; k < kOracleScan && seen.size() < opt.family; ++k) {
      auto c = nb(k);
      if (!c || std::find(seen.begin(), seen.end(), *c) != seen.end()) continue;
      seen.push_back(*c);
      auto z = oracle_counterexample(F, dom, dom.oracle->region(*c), target, kOracleScan);
      if (!z) break;
      family.push_back({{"ball", dom.oracle->render(*c)}, {"z", z->to_string()}, {"F(z)", F.value_map(*z).to_string()}});
    }
    if (!seen.empty() && family.size() == seen.size()) {
      rec.status = Status::fail;
      wit["counterexample"] = {{"family", family}};
      if (!has_probe) wit["reason"] = "image index has no " + cod.name + " probe";
      return rec;
    }
  }
  if (!has_probe) {
    rec.status = Status::fail;
    wit["counterexample"] = {{"reason", "image index has no " + cod.name + " probe"}, {"index", nat_str(fi.witness)}};
    return rec;
  }
  auto in = cod.member(fi.witness, n, opt.fuel);
  rec.fuel_used += in.steps;
  if (!a || !in.is_yes()) {
    rec.status = Status::inconclusive;
    wit["reason"] = !a ? "no certified modulus" : "image membership unconfirmed";
    return rec;
  }
  rec.status = Status::pass;
  return rec;
}

}  // namespace

std::vector<CheckRecord> check_bicontinuity(const EffectiveOperator& F, const std::vector<Nat>& points,
                                            const BicontinuityOptions& opt) {
  if (!F.interval_ext || !F.value_map) throw std::logic_error(F.name + ": bicontinuity check needs instance oracles");
  std::vector<CheckRecord> out;
  for (Side side : {Side::left, Side::right}) {
    const Space& dom = F.domain.space(side);
    const Space& cod = F.codomain.space(side);
    std::mt19937_64 rng(opt.seed * 2 + static_cast<std::uint64_t>(side));
    for (std::size_t k = 0; k < points.size(); ++k) {
      const auto x = dom.oracle->value(points[k]);
      if (!x) continue;
      for (std::size_t b = 0; b < opt.balls_per_point; ++b) {
        const Nat n = ball_containing(F.codomain, side, F.value_map(*x), rng);
        out.push_back(check_pair_at(F, side, points[k], n, opt, rng,
                                    F.name + " " + dom.name + "->" + cod.name + " #" + std::to_string(k) + "." +
                                        std::to_string(b)));
      }
    }
  }
  return out;
}

std::vector<CheckRecord> friedberg_diagnostic(const QmInstance& s, const std::optional<BotCandidate>& candidate,
                                              const std::vector<Code>& probes, Fuel fuel) {
  const Space& tau = s.bi.tau;
  const Nat bot = PointTable::base_index(0);
  const Nat top = PointTable::base_index(1);
  const Nat top_ball = pair(1, 0);  // {top}
  std::vector<CheckRecord> out;

  {
    CheckRecord rec;
    rec.name = "specialization top<=bot";
    auto r = specialization_refute(tau, top, bot, fuel);
    rec.fuel_used = r.steps;
    rec.status = r ? Status::pass : Status::inconclusive;
    rec.witness = {{"refuted", r.is_confirmed()}};
    if (r) rec.witness["ball"] = tau.oracle->render(r.witness);
    out.push_back(rec);
  }
  {
    CheckRecord rec;
    rec.name = "specialization bot<=top";
    const Fuel f = std::min<Fuel>(fuel, 100000);
    auto r = specialization_refute(tau, bot, top, f);
    rec.fuel_used = r.steps;
    rec.witness = {{"refuted", r.is_confirmed()}, {"searched", f}};
    if (r) {
      rec.status = Status::fail;
      rec.witness["counterexample"] = {{"ball", tau.oracle->render(r.witness)}};
    }
    out.push_back(rec);
  }
  if (!candidate) return out;

  std::vector<Nat> points;
  std::vector<std::optional<std::uint64_t>> halted;
  for (std::size_t k = 0; k < probes.size(); ++k) {
    points.push_back(halting_point(s, probes[k]));
    auto v = tau.member(points.back(), top_ball, fuel);
    halted.push_back(v.is_yes() ? std::optional<std::uint64_t>(v.steps) : std::nullopt);
    CheckRecord rec;
    rec.name = "probe #" + std::to_string(k);
    rec.fuel_used = v.steps;
    rec.witness = {{"program", s.registry->name(probes[k])}, {"point", nat_str(points.back())},
                   {"top", halted.back().has_value()}};
    if (halted.back()) rec.witness["halt_step"] = *halted.back();
    out.push_back(rec);
  }

  const Enumerator e = (*candidate)(points);
  std::map<Nat, std::uint64_t> listed;
  for (std::uint64_t k = 0; k < fuel; ++k)
    if (auto j = e(k)) listed.emplace(*j, k);

  auto probe_of = [&](const Nat& j) -> std::optional<std::size_t> {
    auto it = std::find(points.begin(), points.end(), j);
    if (it == points.end()) return std::nullopt;
    return static_cast<std::size_t>(it - points.begin());
  };

  bool sound = true;
  std::optional<std::pair<Nat, std::uint64_t>> listed_bot;
  for (const auto& [j, step] : listed) {
    auto [tag, a] = unpair(j);
    std::optional<Json> why;
    if (tag == 0 && a != 0) why = Json{{"exact", "top"}};
    if (auto p = probe_of(j); p && halted[*p]) why = Json{{"halt_step", *halted[*p]}};
    if (why) {
      sound = false;
      CheckRecord rec;
      rec.name = "unsound " + nat_str(j);
      rec.status = Status::fail;
      rec.witness = {{"listed", nat_str(j)}, {"listed_at", step}, {"counterexample", *why}};
      out.push_back(rec);
    } else if (!listed_bot && (j == bot || probe_of(j))) {
      listed_bot = {j, step};
    }
  }

  auto missing = [&](const Nat& j, const std::string& what) {
    CheckRecord rec;
    rec.name = "incomplete " + nat_str(j);
    rec.status = Status::inconclusive;
    rec.witness = {{"point", nat_str(j)}, {"never_listed_within", fuel}, {"evidence", what}};
    out.push_back(rec);
  };
  if (!listed.count(bot)) missing(bot, "exact bot");
  for (std::size_t k = 0; k < points.size(); ++k)
    if (!halted[k] && !listed.count(points[k])) missing(points[k], "probe #" + std::to_string(k) + " not halted");

  if (sound && listed_bot) {
    std::optional<Nat> unlisted_top;
    if (!listed.count(top)) unlisted_top = top;
    for (std::size_t k = 0; k < points.size() && !unlisted_top; ++k)
      if (halted[k] && !listed.count(points[k])) unlisted_top = points[k];
    if (unlisted_top) {
      // Every basic open around bot is S, so each of these memberships shows
      // bot below the unlisted point.
      Json memberships = Json::array();
      bool all = true;
      for (std::int64_t e = 0; e < 4; ++e) {
        const Nat ball = pair(0, e);
        const bool ok = tau.member(*unlisted_top, ball, fuel).is_yes();
        all = all && ok;
        memberships.push_back({{"ball", tau.oracle->render(ball)}, {"confirmed", ok}});
      }
      CheckRecord rec;
      rec.name = "upward closure";
      rec.status = all ? Status::fail : Status::inconclusive;
      rec.witness = {{"listed_bot", nat_str(listed_bot->first)},
                     {"listed_at", listed_bot->second},
                     {"unlisted_top", nat_str(*unlisted_top)},
                     {"scanned", fuel},
                     {"superset_memberships", memberships}};
      if (all) rec.witness["counterexample"] = "candidate lists bot but not a point above it";
      out.push_back(rec);
    }
  }
  return out;
}

}  // namespace bitopo
