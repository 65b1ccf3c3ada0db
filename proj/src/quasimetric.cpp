#include "bitopo/quasimetric.hpp"

#include <bit>
#include <mutex>

namespace bitopo {

Dyadic delta_upper(const Dyadic& y, const Dyadic& z) { return max(y - z, Dyadic(0)); }
Dyadic delta_lower(const Dyadic& y, const Dyadic& z) { return max(z - y, Dyadic(0)); }

Dyadic QuasiMetric::delta(const Dyadic& y, const Dyadic& z) const {
  return kind == MetricKind::upper ? delta_upper(y, z) : delta_lower(y, z);
}

Region QuasiMetric::ball(const Dyadic& center, std::int64_t e) const {
  const Dyadic r = Dyadic::pow2(-e);
  return kind == MetricKind::upper ? Region::above(center - r, carrier) : Region::below(center + r, carrier);
}

std::optional<std::int64_t> radius_exponent(const Nat& m) {
  static const Nat limit = Nat(1) << 40;
  if (m > limit) return std::nullopt;
  return static_cast<std::int64_t>(m.convert_to<std::uint64_t>());
}

Region QuasiMetric::ball_of(const Nat& code) const {
  auto [a, m] = unpair(code);
  auto e = radius_exponent(m);
  if (!e) throw std::out_of_range("ball radius exponent too large");
  return ball(base(a), *e);
}

Verdict QuasiMetric::lt(const Nat& a, const Nat& b, const Dyadic& bound) const {
  return Verdict::decide(delta(base(a), base(b)) < bound);
}

Verdict QuasiMetric::gt(const Nat& a, const Nat& b, const Dyadic& bound) const {
  return Verdict::decide(delta(base(a), base(b)) > bound);
}

namespace {

CeSet relation_set(const QuasiMetric& q, bool less) {
  return CeSet::decidable([q, less](const Nat& t) {
    auto xs = untuple(t, 4);
    auto e = radius_exponent(xs[3]);
    if (!e) return false;
    const Dyadic bound(Integer(xs[2]), -*e);
    return (less ? q.lt(xs[0], xs[1], bound) : q.gt(xs[0], xs[1], bound)).is_yes();
  });
}

}  // namespace

CeSet QuasiMetric::lt_set() const { return relation_set(*this, true); }
CeSet QuasiMetric::gt_set() const { return relation_set(*this, false); }

QuasiMetric conjugate(const QuasiMetric& q) {
  QuasiMetric c = q;
  c.kind = q.kind == MetricKind::upper ? MetricKind::lower : MetricKind::upper;
  const std::string suffix = "^c";
  if (q.name.size() > suffix.size() && q.name.ends_with(suffix)) c.name = q.name.substr(0, q.name.size() - suffix.size());
  else c.name = q.name + suffix;
  return c;
}

Outcome sym_lt(const QuasiMetric& q, const Nat& a, const Nat& b, const Nat& c, const Nat& e) {
  auto ex = radius_exponent(e);
  if (!ex) return Outcome::exhausted(0);
  const Dyadic bound(Integer(c), -*ex);
  if (q.lt(a, b, bound).is_yes() && q.lt(b, a, bound).is_yes()) return Outcome::confirmed(tuple({a, b, c, e}), 2);
  return Outcome::exhausted(2);
}

bool metric_precedes(const QuasiMetric& q, const Nat& small, const Nat& big) {
  auto [i, m] = unpair(small);
  auto [j, n] = unpair(big);
  if (m <= n) return false;
  auto em = radius_exponent(m), en = radius_exponent(n);
  if (!em || !en) return false;
  return q.lt(j, i, Dyadic::pow2(-*en) - Dyadic::pow2(-*em)).is_yes();
}

QPoint QPoint::conjugated() const {
  QPoint p = *this;
  std::swap(p.probe[0], p.probe[1]);
  std::swap(p.leads[0], p.leads[1]);
  return p;
}

QPoint point_from_enumerators(Enumerator left, std::optional<Enumerator> right) {
  auto widen = [](Enumerator e) -> Probe {
    return [e](const Nat& a, std::int64_t r, Fuel budget) {
      for (Fuel k = 0; k < budget; ++k) {
        auto x = e(k);
        if (!x) continue;
        auto [c, m] = unpair(*x);
        if (c == a && m >= r) return Verdict::yes(k + 1);
      }
      return Verdict::unknown(budget);
    };
  };
  QPoint p;
  p.probe[0] = widen(left);
  p.leads[0] = left;
  if (right) {
    p.probe[1] = widen(*right);
    p.leads[1] = *right;
  }
  p.label = "enumerated";
  return p;
}

std::shared_ptr<const QPoint> PointTable::base_point(const Nat& a) const {
  auto p = std::make_shared<QPoint>();
  const QuasiMetric q = q_;
  const Dyadic y = q.base(a);
  p->probe[0] = [q, y](const Nat& c, std::int64_t e, Fuel) {
    return Verdict::decide(q.delta(q.base(c), y) < Dyadic::pow2(-e));
  };
  p->probe[1] = [q, y](const Nat& c, std::int64_t e, Fuel) {
    return Verdict::decide(q.delta(y, q.base(c)) < Dyadic::pow2(-e));
  };
  Enumerator own([a](std::uint64_t k) -> std::optional<Nat> { return pair(a, k); });
  p->leads = {own, own};
  p->value = y;
  p->exact = y;
  p->label = "base " + y.to_string();
  return p;
}

Nat PointTable::add(QPoint p) {
  std::unique_lock lock(mutex_);
  points_.push_back(std::make_shared<const QPoint>(std::move(p)));
  return pair(1, points_.size() - 1);
}

std::shared_ptr<const QPoint> PointTable::find(const Nat& i) const {
  auto [tag, j] = unpair(i);
  if (tag == 0) {
    {
      std::lock_guard lock(base_mutex_);
      if (auto it = base_cache_.find(j); it != base_cache_.end()) return it->second;
    }
    auto p = base_point(j);
    std::lock_guard lock(base_mutex_);
    if (base_cache_.size() >= (std::size_t{1} << 16)) base_cache_.clear();
    base_cache_.emplace(j, p);
    return p;
  }
  if (tag != 1) return nullptr;
  std::shared_lock lock(mutex_);
  if (j >= points_.size()) return nullptr;
  return points_[static_cast<std::size_t>(j)];
}

std::shared_ptr<const QPoint> PointTable::get(const Nat& i) const {
  auto p = find(i);
  if (!p) throw UnknownCode("unknown point index " + i.str());
  return p;
}

std::size_t PointTable::registered() const {
  std::shared_lock lock(mutex_);
  return points_.size();
}

Nat PointTable::resolve(Nat i) const {
  for (int hops = 0; hops < 64; ++hops) {
    auto p = find(i);
    if (!p || !p->alias) return i;
    i = *p->alias;
  }
  return i;
}

Verdict PointTable::equal(const Nat& i, const Nat& j, Fuel) const {
  const Nat a = resolve(i), b = resolve(j);
  if (a == b) return Verdict::yes(1);
  auto p = find(a), r = find(b);
  if (p && r && p->exact && r->exact) return Verdict::decide(*p->exact == *r->exact);
  return Verdict::unknown(1);
}

namespace {

// Every base code, the dense order shifted to start at `anchor`. Finite
// carriers keep their own order.
Enumerator centers_near(const QuasiMetric& q, const Dyadic& anchor) {
  if (q.carrier) return q.base_order;
  return Enumerator([q, anchor](std::uint64_t j) -> std::optional<Nat> {
    auto d = q.base_order(j);
    if (!d) return std::nullopt;
    return q.base_code(anchor + q.base(*d));
  });
}

Enumerator complete_row(PairTest member, Nat i) {
  return Enumerator([member, i](std::uint64_t k) -> std::optional<Nat> {
    auto [n, b] = unpair(k);
    if (member(i, n, to_u64(b)).is_yes()) return n;
    return std::nullopt;
  });
}

}  // namespace

Space induced_space(std::shared_ptr<PointTable> table, Side side, std::shared_ptr<Registry> registry) {
  const int s = static_cast<int>(side);
  const QuasiMetric q = side == Side::left ? table->metric() : conjugate(table->metric());
  Space sp;
  sp.name = q.name;
  sp.registry = registry;
  sp.member = [table, s](const Nat& i, const Nat& n, Fuel b) -> Verdict {
    auto p = table->find(i);
    if (!p) return Verdict::no(1);
    if (!p->probe[s]) return Verdict::unknown(b);
    auto [a, m] = unpair(n);
    auto e = radius_exponent(m);
    if (!e) return Verdict::unknown(b);
    return p->probe[s](a, *e, b);
  };
  sp.precedes = [q](const Nat& m, const Nat& n, Fuel) {
    if (metric_precedes(q, m, n)) return Verdict::yes(1);
    if (q.extra_precedes && q.extra_precedes(q.kind, unpair(m).first, unpair(n).first)) return Verdict::yes(1);
    return Verdict::no(1);
  };
  auto member = sp.member;
  sp.neighbourhood = [table, s, member](const Nat& i) {
    auto p = table->find(i);
    if (!p || !p->probe[s]) return complete_row(member, i);
    return interleave(p->leads[s], complete_row(member, i));
  };
  auto precedes = sp.precedes;
  sp.refine = [q, precedes](const Nat& n) {
    const Nat m = unpair(n).second;
    // Refinements crowd at the ball's finite end, so centres start there.
    const Region r = q.ball_of(n);
    const auto end = q.kind == MetricKind::upper ? r.lo : r.hi;
    const Enumerator centers = end ? centers_near(q, *end) : q.base_order;
    return Enumerator([centers, precedes, n, m](std::uint64_t k) -> std::optional<Nat> {
      auto [j, d] = unpair(k);
      auto a = centers(to_u64(j));
      if (!a) return std::nullopt;
      const Nat r = d % 2 == 0 ? m + 1 + d / 2 : Nat(d / 2);
      const Nat cand = pair(*a, r);
      if (precedes(cand, n, 1).is_yes()) return cand;
      return std::nullopt;
    });
  };
  sp.dense = [](const Nat& a) { return PointTable::base_index(a); };
  sp.dense_order = q.base_order;

  auto oracle = std::make_shared<SpaceOracle>();
  oracle->value = [table](const Nat& i) -> std::optional<Dyadic> {
    auto p = table->find(i);
    return p ? p->value : std::nullopt;
  };
  oracle->region = [q](const Nat& n) { return q.ball_of(n); };
  oracle->point_of = [q](const Dyadic& y) { return PointTable::base_index(q.base_code(y)); };
  oracle->render = [q](const Nat& n) { return q.ball_of(n).to_string(); };
  sp.oracle = oracle;

  sp.points = Numbering{
      q.name + ".x",
      [table](const Nat& i, Fuel) { return Verdict::decide(table->find(i) != nullptr); },
      [table](const Nat& i, Fuel) { return table->find(i) ? Outcome::confirmed(i, 1) : Outcome::exhausted(1); },
      [table](const Nat& i, const Nat& j, Fuel b) { return table->equal(i, j, b); },
  };

  auto cache = std::make_shared<WriteOnceCache<Nat, Nat>>();
  const Space self = sp;
  sp.pt = registry->add(
      [table, self, side, cache](const Nat& f, Fuel fuel) {
        if (fuel == 0) return Outcome::exhausted(0);
        auto j = cache->get_or_make(f, [&] { return table->add(limit_point(self, Code{to_u64(f)}, side)); });
        return Outcome::confirmed(j, 1);
      },
      q.name + ".pt");
  return sp;
}

BiSpace induced_bispace(std::shared_ptr<PointTable> table, std::shared_ptr<Registry> registry) {
  BiSpace bi{induced_space(table, Side::left, registry), induced_space(table, Side::right, registry), std::nullopt};
  const Space tau = bi.tau, sigma = bi.sigma;
  auto cache = std::make_shared<WriteOnceCache<Nat, Nat>>();
  bi.bi_pt = registry->add(
      [table, tau, sigma, cache](const Nat& ff, Fuel fuel) {
        if (fuel == 0) return Outcome::exhausted(0);
        auto [f1, f2] = unpair(ff);
        auto j = cache->get_or_make(
            ff, [&] { return bi_limit_pass_c(*table, tau, sigma, Code{to_u64(f1)}, Code{to_u64(f2)}); });
        return Outcome::confirmed(j, 1);
      },
      table->metric().name + ".bi_pt");
  return bi;
}

Outcome ball_member(const Space& space, const Nat& i, const Nat& ball, Fuel fuel) {
  auto v = space.member(i, ball, fuel);
  return v.is_yes() ? Outcome::confirmed(ball, v.steps) : Outcome::exhausted(std::min<Fuel>(v.steps, fuel));
}

Nat base_to_c(const Nat& b) { return PointTable::base_index(b); }

Nat c_to_wc(PointTable& table, const Nat& i) {
  QPoint p = *table.get(i);
  p.probe[1] = nullptr;
  p.leads[1] = Enumerator::empty();
  p.alias = i;
  p.exact.reset();
  p.label = "wc(" + p.label + ")";
  return table.add(std::move(p));
}

QPoint limit_point(const Space& space, Code f, Side side) {
  const int s = static_cast<int>(side);
  auto reg = space.registry;
  auto precedes = space.precedes;
  QPoint p;
  p.probe[s] = [reg, precedes, f](const Nat& b, std::int64_t e, Fuel budget) {
    if (budget == 0) return Verdict::unknown(0);
    const std::uint64_t n = std::bit_width(budget);
    auto fn = reg->apply(f, n, budget);
    if (!fn) return Verdict::unknown(fn.steps);
    auto v = precedes(fn.witness, pair(b, e), budget);
    return v.is_yes() ? Verdict::yes(fn.steps + v.steps) : Verdict::unknown(budget);
  };
  p.leads[s] = Enumerator([reg, f](std::uint64_t k) -> std::optional<Nat> {
    auto [n, d] = unpair(k);
    auto fn = reg->apply(f, n, to_u64(n) + 1);
    if (!fn) return std::nullopt;
    auto [a, m] = unpair(fn.witness);
    if (m < d + 1) return std::nullopt;
    return pair(a, m - 1 - d);
  });
  p.label = "limit";
  return p;
}

Nat limit_pass_wc(PointTable& table, const Space& tau, Code f) { return table.add(limit_point(tau, f, Side::left)); }

Nat bi_limit_pass_c(PointTable& table, const Space& tau, const Space& sigma, Code f_tau, Code f_sigma) {
  QPoint p = limit_point(tau, f_tau, Side::left);
  QPoint r = limit_point(sigma, f_sigma, Side::right);
  p.probe[1] = r.probe[1];
  p.leads[1] = r.leads[1];
  p.label = "bi-limit";
  return table.add(std::move(p));
}

Outcome regularity_s(const Space& space, const Nat& i, const Nat& ball, Fuel fuel) {
  return search(space.neighbourhood(i), [&](const Nat& a, Fuel b) { return space.precedes(a, ball, b); }, fuel);
}

LacombeSet regularity_t(const QuasiMetric& q, const Nat& s_result) {
  auto [b, n] = unpair(s_result);
  auto en = radius_exponent(n);
  if (!en) return CeSet::listed(Enumerator::empty());
  const Dyadic gap = Dyadic::pow2(-*en);
  auto good = [q, b, gap](const Nat& code) {
    auto [v, c] = unpair(code);
    auto ec = radius_exponent(c);
    if (!ec) return false;
    return q.gt(b, v, Dyadic::pow2(1 - *ec) + gap).is_yes();
  };
  // Covering balls crowd around the s-ball, so centres start at its centre.
  const Enumerator centers = centers_near(q, q.base(b));
  Enumerator e([centers, good](std::uint64_t k) -> std::optional<Nat> {
    auto [j, c] = unpair(k);
    auto v = centers(to_u64(j));
    if (!v) return std::nullopt;
    const Nat code = pair(*v, c);
    if (good(code)) return code;
    return std::nullopt;
  });
  return CeSet::tested([good](const Nat& code, Fuel) { return Verdict::decide(good(code)); }, e);
}

RegularityWitness regularity_witness(const Space& space, const QuasiMetric& q, Fuel fuel) {
  RegularityWitness w;
  w.s = [space](const Nat& i, const Nat& m, Fuel f) { return regularity_s(space, i, m, f); };
  w.t = [space, q, fuel](const Nat& i, const Nat& m) {
    auto s = regularity_s(space, i, m, fuel);
    if (!s) return CeSet::listed(Enumerator::empty());
    return regularity_t(q, s.witness);
  };
  return w;
}

Outcome refine_toward(const Space& space, const PointTable& table, Side side, const Nat& y, const Nat& ball,
                      Fuel fuel) {
  auto p = table.find(y);
  const int other = side == Side::left ? 1 : 0;
  if (!p || !p->probe[other]) return Outcome::exhausted(0);
  return search(
      space.neighbourhood(y),
      [&](const Nat& c, Fuel b) {
        auto v = space.precedes(c, ball, b);
        if (v.is_no()) return v;
        auto [u, m] = unpair(c);
        auto e = radius_exponent(m);
        if (!e) return Verdict::unknown(b);
        return both(v, [&] { return p->probe[other](u, *e, b); });
      },
      fuel);
}

}  // namespace bitopo
