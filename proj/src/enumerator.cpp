#include "bitopo/enumerator.hpp"

#include <algorithm>
#include <bit>

namespace bitopo {

Enumerator Enumerator::empty() {
  return Enumerator([](std::uint64_t) -> std::optional<Nat> { return std::nullopt; });
}

Enumerator Enumerator::naturals() {
  return Enumerator([](std::uint64_t k) -> std::optional<Nat> { return Nat(k); });
}

Enumerator Enumerator::of(std::vector<Nat> values) {
  auto shared = std::make_shared<const std::vector<Nat>>(std::move(values));
  return Enumerator([shared](std::uint64_t k) -> std::optional<Nat> {
    if (k < shared->size()) return (*shared)[k];
    return std::nullopt;
  });
}

Enumerator Enumerator::filtered(std::function<bool(const Nat&)> keep) {
  return Enumerator([keep = std::move(keep)](std::uint64_t k) -> std::optional<Nat> {
    Nat x(k);
    if (keep(x)) return x;
    return std::nullopt;
  });
}

Enumerator interleave(Enumerator a, Enumerator b) {
  return Enumerator([a = std::move(a), b = std::move(b)](std::uint64_t k) {
    return k % 2 == 0 ? a(k / 2) : b(k / 2);
  });
}

Enumerator map(Enumerator e, std::function<Nat(const Nat&)> f) {
  return Enumerator([e = std::move(e), f = std::move(f)](std::uint64_t k) -> std::optional<Nat> {
    if (auto v = e(k)) return f(*v);
    return std::nullopt;
  });
}

Verdict both(const Verdict& a, const std::function<Verdict()>& b) {
  if (a.truth == Truth::no) return a;
  const Verdict v = b();
  const auto steps = a.steps + v.steps;
  if (v.truth == Truth::no) return Verdict::no(steps);
  if (a.truth == Truth::yes && v.truth == Truth::yes) return Verdict::yes(steps);
  return Verdict::unknown(steps);
}

CeSet CeSet::listed(Enumerator e) {
  auto rep = std::make_shared<Rep>();
  rep->enumerator = std::move(e);
  return CeSet(std::move(rep));
}

CeSet CeSet::tested(SemiTest test) {
  Enumerator e([test](std::uint64_t k) -> std::optional<Nat> {
    auto [x, budget] = unpair(Nat(k));
    if (test(x, to_u64(budget)).is_yes()) return x;
    return std::nullopt;
  });
  return tested(std::move(test), std::move(e));
}

CeSet CeSet::tested(SemiTest test, Enumerator enumerator) {
  auto rep = std::make_shared<Rep>();
  rep->enumerator = std::move(enumerator);
  rep->test = std::move(test);
  return CeSet(std::move(rep));
}

CeSet CeSet::image(Enumerator sources, Producer produce) {
  auto rep = std::make_shared<Rep>();
  rep->enumerator = Enumerator([sources, produce](std::uint64_t k) -> std::optional<Nat> {
    auto [j, budget] = unpair(Nat(k));
    auto src = sources(to_u64(j));
    if (!src) return std::nullopt;
    auto out = produce(*src, to_u64(budget));
    if (out.is_confirmed()) return out.witness;
    return std::nullopt;
  });
  rep->sources = std::move(sources);
  rep->produce = std::move(produce);
  return CeSet(std::move(rep));
}

CeSet CeSet::image(Enumerator sources, Producer produce, SemiTest viable) {
  auto base = image(std::move(sources), std::move(produce));
  auto rep = std::make_shared<Rep>(*base.rep_);
  rep->viable = std::move(viable);
  return CeSet(std::move(rep));
}

CeSet CeSet::decidable(std::function<bool(const Nat&)> member) {
  return tested([member](const Nat& x, Fuel) { return Verdict::decide(member(x)); },
                Enumerator::filtered(member));
}

Verdict CeSet::test(const Nat& x, Fuel budget) const {
  if (rep_->test) return rep_->test(x, budget);
  if (rep_->produce) {
    auto hit = find([&x](const Nat& y, Fuel) { return Verdict::decide(y == x); }, budget);
    return hit.is_confirmed() ? Verdict::yes(hit.steps) : Verdict::unknown(hit.steps);
  }
  auto hit = scan_for(rep_->enumerator, x, budget);
  return hit.is_confirmed() ? Verdict::yes(hit.steps) : Verdict::unknown(hit.steps);
}

Outcome CeSet::find(const SemiTest& pred, Fuel fuel) const {
  if (rep_->produce) {
    const auto& produce = rep_->produce;
    const auto& viable = rep_->viable;
    // Candidates are sources; the witness reported is the produced element.
    auto produced = std::make_shared<std::optional<Nat>>();
    auto hit = search(
        rep_->sources,
        [&](const Nat& src, Fuel budget) {
          if (viable) {
            auto v = viable(src, budget);
            if (v.is_no()) return v;
          }
          auto out = produce(src, budget);
          if (!out.is_confirmed()) return Verdict::unknown(std::max<std::uint64_t>(out.steps, 1));
          auto v = pred(out.witness, budget);
          v.steps += out.steps;
          if (v.is_yes()) *produced = out.witness;
          return v;
        },
        fuel);
    if (hit.is_confirmed()) return Outcome::confirmed(**produced, hit.steps);
    return hit;
  }
  return search(rep_->enumerator, pred, fuel);
}

Outcome dovetail(const TaskFamily& tasks,
                 const std::function<bool(std::uint64_t, const Nat&)>& accept, Fuel fuel) {
  if (tasks.count && *tasks.count == 0) return Outcome::exhausted(0);
  std::uint64_t used = 0;
  std::vector<Enumerator> cache;
  for (std::uint64_t d = 0;; ++d) {
    const std::uint64_t top = tasks.count ? std::min(d, *tasks.count - 1) : d;
    for (std::uint64_t t = 0; t <= top; ++t) {
      if (used >= fuel) return Outcome::exhausted(used);
      ++used;
      if (cache.size() <= t) cache.push_back(tasks.task(t));
      if (auto v = cache[t](d - t); v && accept(t, *v)) return Outcome::confirmed(pair(Nat(t), *v), used);
    }
  }
}

Outcome search(const Enumerator& candidates, const SemiTest& test, Fuel fuel) {
  struct Live {
    Nat value;
    std::uint64_t admitted;
  };
  std::vector<Live> live;
  std::uint64_t used = 0;
  for (std::uint64_t d = 0;; ++d) {
    if (used >= fuel) return Outcome::exhausted(used);
    ++used;
    if (auto c = candidates(d)) live.push_back({std::move(*c), d});
    std::size_t keep = 0;
    for (std::size_t k = 0; k < live.size(); ++k) {
      const Fuel wanted = d - live[k].admitted;
      if (!std::has_single_bit(wanted) && wanted != 0) {
        if (keep != k) live[keep] = std::move(live[k]);
        ++keep;
        continue;
      }
      if (used >= fuel) return Outcome::exhausted(used);
      const Fuel budget = std::min<Fuel>(wanted, fuel - used);
      const Verdict v = test(live[k].value, budget);
      used += std::max<std::uint64_t>(v.steps, 1);
      if (v.is_yes()) return Outcome::confirmed(live[k].value, std::min(used, fuel));
      // A truncated test that stays undecided ends the run; otherwise a
      // larger fuel could confirm this candidate instead of a later one.
      if (budget < wanted && !v.is_no()) return Outcome::exhausted(std::min(used, fuel));
      if (!v.is_no()) {
        if (keep != k) live[keep] = std::move(live[k]);
        ++keep;
      }
    }
    live.resize(keep);
  }
}

Outcome scan_for(const Enumerator& e, const Nat& x, Fuel fuel) {
  for (std::uint64_t k = 0; k < fuel; ++k)
    if (auto v = e(k); v && *v == x) return Outcome::confirmed(x, k + 1);
  return Outcome::exhausted(fuel);
}

}  // namespace bitopo
