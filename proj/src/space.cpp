#include "bitopo/space.hpp"

#include <future>
#include <mutex>
#include <random>

namespace bitopo {

CeSet Space::membership() const {
  auto test = member;
  return CeSet::tested([test](const Nat& in, Fuel b) {
    auto [i, n] = unpair(in);
    return test(i, n, b);
  });
}

CeSet Space::strong_inclusion() const {
  auto test = precedes;
  return CeSet::tested([test](const Nat& mn, Fuel b) {
    auto [m, n] = unpair(mn);
    return test(m, n, b);
  });
}

BiSpace swapped(const BiSpace& bi) { return BiSpace{bi.sigma, bi.tau, std::nullopt}; }

Outcome sb_search(const Space& space, const Nat& i, const Nat& m, const Nat& n, Fuel fuel) {
  auto test = [&](const Nat& a, Fuel b) {
    auto first = space.precedes(a, m, b);
    if (m == n || first.is_no()) return first;
    return both(first, [&] { return space.precedes(a, n, b); });
  };
  return search(space.neighbourhood(i), test, fuel);
}

namespace {

struct ConvergeState {
  Space space;
  Nat point;
  Fuel budget;
  Enumerator nb;
  std::mutex mutex;
  std::vector<Nat> seq;
  bool failed = false;

  // Extends seq to length k+1; false if no starting neighbourhood was found.
  bool extend_to(std::uint64_t k) {
    if (failed) return false;
    if (seq.empty()) {
      auto first = search(nb, [](const Nat&, Fuel) { return Verdict::yes(); }, budget);
      if (!first) {
        failed = true;
        return false;
      }
      seq.push_back(first.witness);
    }
    while (seq.size() <= k) {
      const Nat& last = seq.back();
      auto target = nb(seq.size() - 1);
      auto next = sb_search(space, point, last, target ? *target : last, budget);
      if (!next && target) next = sb_search(space, point, last, last, budget);
      seq.push_back(next ? next.witness : last);
    }
    return true;
  }
};

}  // namespace

NormedEnumeration converge(const Space& space, const Nat& i, Fuel step_budget) {
  auto state = std::make_shared<ConvergeState>();
  state->space = space;
  state->point = i;
  state->budget = step_budget;
  state->nb = space.neighbourhood(i);
  auto f = space.registry->add(
      [state](const Nat& k, Fuel fuel) -> Outcome {
        const auto idx = to_u64(k);
        if (fuel < idx + 1) return Outcome::exhausted(fuel);
        std::lock_guard lock(state->mutex);
        if (!state->extend_to(idx)) return Outcome::exhausted(fuel);
        return Outcome::confirmed(state->seq[idx], idx + 1);
      },
      space.name + ".converge");
  return NormedEnumeration{f, space.registry};
}

Outcome limit_pass(const Space& space, const NormedEnumeration& ne, Fuel fuel) {
  if (!space.pt) throw std::logic_error(space.name + ": no limit passing");
  if (fuel == 0) return Outcome::exhausted(0);
  return space.registry->apply(*space.pt, ne.f.value, fuel);
}

namespace {

Enumerator product_enumerator(Enumerator a, Enumerator b) {
  return Enumerator([a, b](std::uint64_t k) -> std::optional<Nat> {
    auto [p, q] = unpair(k);
    auto x = a(to_u64(p));
    if (!x) return std::nullopt;
    auto y = b(to_u64(q));
    if (!y) return std::nullopt;
    return pair(*x, *y);
  });
}

}  // namespace

Space join_space(const BiSpace& bi) {
  const Space t = bi.tau, s = bi.sigma;
  Space j;
  j.name = t.name + "v" + s.name;
  j.member = [t, s](const Nat& i, const Nat& mn, Fuel b) {
    auto [m, n] = unpair(mn);
    auto v = t.member(i, m, b);
    if (v.is_no()) return v;
    return both(v, [&] { return s.member(i, n, b); });
  };
  j.precedes = [t, s](const Nat& x, const Nat& y, Fuel b) {
    auto [m, n] = unpair(x);
    auto [m2, n2] = unpair(y);
    auto v = t.precedes(m, m2, b);
    if (v.is_no()) return v;
    return both(v, [&] { return s.precedes(n, n2, b); });
  };
  j.neighbourhood = [t, s](const Nat& i) { return product_enumerator(t.neighbourhood(i), s.neighbourhood(i)); };
  j.refine = [t, s](const Nat& mn) {
    auto [m, n] = unpair(mn);
    return product_enumerator(t.refine(m), s.refine(n));
  };
  j.dense = t.dense;
  j.dense_order = t.dense_order;
  j.registry = t.registry;
  j.points = t.points;
  if (t.oracle && s.oracle) {
    auto o = std::make_shared<SpaceOracle>(*t.oracle);
    auto to = t.oracle, so = s.oracle;
    o->region = [to, so](const Nat& mn) {
      auto [m, n] = unpair(mn);
      return to->region(m).intersect(so->region(n));
    };
    o->render = [to, so](const Nat& mn) {
      auto [m, n] = unpair(mn);
      return to->render(m) + " & " + so->render(n);
    };
    j.oracle = o;
  }
  return j;
}

namespace {

// <i,m> in the projection iff some n completes it; n is searched over all
// naturals since the basis numbering is total.
CeSet project(const CeSet& join_l, bool first) {
  return CeSet::tested([join_l, first](const Nat& im, Fuel b) {
    auto [i, m] = unpair(im);
    auto hit = search(
        Enumerator::naturals(),
        [&](const Nat& n, Fuel bb) { return join_l.test(pair(i, first ? pair(m, n) : pair(n, m)), bb); }, b);
    return hit ? Verdict::yes(hit.steps) : Verdict::unknown(hit.steps);
  });
}

}  // namespace

std::pair<CeSet, CeSet> split_L(const CeSet& join_l) { return {project(join_l, true), project(join_l, false)}; }

CeSet merge_L(const CeSet& l_tau, const CeSet& l_sigma) {
  return CeSet::tested([l_tau, l_sigma](const Nat& x, Fuel b) {
    auto [i, mn] = unpair(x);
    auto [m, n] = unpair(mn);
    auto v = l_tau.test(pair(i, m), b);
    if (v.is_no()) return v;
    return both(v, [&] { return l_sigma.test(pair(i, n), b); });
  });
}

StarNumbering star_bicomputable(const Numbering& x_tau, const Numbering& x_sigma, const CeSet& l_tau,
                                const CeSet& l_sigma) {
  auto points = product_numbering(x_tau, x_sigma);
  auto lift = [points](const CeSet& l, bool first) {
    return CeSet::tested([points, l, first](const Nat& x, Fuel b) {
      auto [ij, m] = unpair(x);
      auto d = points.deref(ij, b);
      if (!d) return Verdict::unknown(d.steps);
      auto [i, j] = unpair(ij);
      auto v = l.test(pair(first ? i : j, m), b);
      v.steps += d.steps;
      return v.is_no() ? Verdict::unknown(v.steps) : v;
    });
  };
  return StarNumbering{points, lift(l_tau, true), lift(l_sigma, false)};
}

Code bi_limit_pass(Registry& registry, Code pt_tau, Code pt_sigma) {
  Registry* reg = &registry;
  return registry.add(
      [reg, pt_tau, pt_sigma](const Nat& m, Fuel fuel) {
        auto [m1, m2] = unpair(m);
        auto a = reg->apply(pt_tau, m1, fuel);
        if (!a) return a;
        auto b = reg->apply(pt_sigma, m2, fuel);
        if (!b) return Outcome::exhausted(a.steps + b.steps);
        return Outcome::confirmed(pair(a.witness, b.witness), a.steps + b.steps);
      },
      "bi_pt");
}

Outcome lacombe_member(const Space& space, const LacombeSet& set, const Nat& i, Fuel fuel) {
  Fuel rest = fuel;
  Fuel used = 0;
  if (set.has_direct_test()) {
    const Fuel half = fuel / 2;
    rest = fuel - half;
    auto hit = search(space.neighbourhood(i), [&](const Nat& a, Fuel b) { return set.test(a, b); }, half);
    if (hit) return hit;
    used = hit.steps;
  }
  auto hit = set.find([&](const Nat& a, Fuel b) { return space.member(i, a, b); }, rest);
  if (hit) return Outcome::confirmed(hit.witness, used + hit.steps);
  return Outcome::exhausted(used + hit.steps);
}

namespace {

CheckRecord check_one(const BiSpace& bi, const RegularityWitness& w, const RegularityQuery& q,
                      const RegularityOptions& opt, const std::string& label, std::uint64_t index) {
  const Space& tau = bi.tau;
  const Space& sigma = bi.sigma;
  const auto& ot = *tau.oracle;
  const auto& os = *sigma.oracle;
  CheckRecord rec;
  rec.name = label + " #" + std::to_string(index);
  Json& wit = rec.witness;
  const auto value = ot.value(q.i);
  wit["point"] = value ? value->to_string() : std::string("?");
  wit["ball"] = ot.render(q.m);
  auto fail = [&](const std::string& cond, Json detail) {
    rec.status = Status::fail;
    wit["condition"] = cond;
    wit["counterexample"] = std::move(detail);
    return rec;
  };

  // (a)
  auto s = w.s(q.i, q.m, opt.fuel);
  rec.fuel_used += s.steps;
  if (!s) {
    rec.status = Status::inconclusive;
    wit["condition"] = "a";
    wit["reason"] = "s exhausted";
    return rec;
  }
  const Nat b = s.witness;
  wit["s"] = ot.render(b);
  const Region sball = ot.region(b);
  const Region mball = ot.region(q.m);

  // (b)
  auto inside = tau.member(q.i, b, opt.fuel);
  rec.fuel_used += inside.steps;
  if (value && !sball.contains(*value)) return fail("b", {{"point_outside_s", value->to_string()}});
  if (!sball.subset_of(mball)) return fail("b", {{"s_not_inside_ball", ot.render(b)}});
  if (!inside.is_yes()) {
    rec.status = Status::inconclusive;
    wit["condition"] = "b";
    wit["reason"] = "membership in s-ball unconfirmed";
    return rec;
  }
  if (!tau.precedes(b, q.m, opt.fuel).is_yes()) return fail("b", {{"not_strongly_included", ot.render(b)}});

  // (c)
  const LacombeSet t = w.t(q.i, q.m);
  std::mt19937_64 rng(opt.seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
  const auto outside = mball.complement_samples(rng, opt.complement_samples);
  std::size_t covered = 0;
  for (const auto& y : outside) {
    auto hit = lacombe_member(sigma, t, ot.point_of(y), opt.fuel);
    rec.fuel_used += hit.steps;
    if (!hit) return fail("c", {{"missing_point", y.to_string()}, {"fuel", opt.fuel}});
    ++covered;
  }
  wit["covered"] = covered;

  // (d)
  std::size_t seen = 0;
  for (std::uint64_t k = 0; k < opt.fuel && seen < opt.t_prefix; ++k) {
    auto v = t.enumerator()(k);
    if (!v) continue;
    ++seen;
    if (!sball.disjoint(os.region(*v))) return fail("d", {{"t_ball", os.render(*v)}, {"s_ball", ot.render(b)}});
  }
  wit["t_checked"] = seen;
  std::vector<Dyadic> probes;
  if (value) probes.push_back(*value);
  for (const auto& y : sball.interior_samples(rng, opt.cross_points)) probes.push_back(y);
  for (std::size_t k = 0; k < probes.size(); ++k) {
    const Nat p = k == 0 && value ? q.i : ot.point_of(probes[k]);
    if (!tau.member(p, b, opt.fuel).is_yes()) continue;
    auto hit = lacombe_member(sigma, t, p, opt.fuel);
    rec.fuel_used += hit.steps;
    if (hit) return fail("d", {{"common_point", probes[k].to_string()}, {"t_ball", os.render(hit.witness)}});
  }
  rec.status = Status::pass;
  return rec;
}

}  // namespace

std::vector<CheckRecord> check_effective_regularity(const BiSpace& bi, const RegularityWitness& w,
                                                    const std::vector<RegularityQuery>& queries,
                                                    const RegularityOptions& options, const std::string& label) {
  if (!bi.tau.oracle || !bi.sigma.oracle) throw std::logic_error("regularity check needs instance oracles");
  std::vector<std::future<CheckRecord>> jobs;
  jobs.reserve(queries.size());
  for (std::size_t k = 0; k < queries.size(); ++k)
    jobs.push_back(std::async(std::launch::async, [&, k] { return check_one(bi, w, queries[k], options, label, k); }));
  std::vector<CheckRecord> out;
  out.reserve(jobs.size());
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

Outcome specialization_refute(const Space& space, const Nat& i, const Nat& j, Fuel fuel) {
  if (!space.oracle) throw std::logic_error(space.name + ": specialization refutation needs an oracle");
  const auto yj = space.oracle->value(j);
  if (!yj) return Outcome::exhausted(0);
  auto o = space.oracle;
  return search(
      space.neighbourhood(i),
      [o, yj](const Nat& n, Fuel) { return o->region(n).contains(*yj) ? Verdict::no(1) : Verdict::yes(1); }, fuel);
}

}  // namespace bitopo
