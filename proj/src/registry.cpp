#include "bitopo/registry.hpp"

namespace bitopo {

Code Registry::add(PartialFn f, std::string name) {
  std::unique_lock lock(mutex_);
  fns_.push_back({std::make_shared<const PartialFn>(std::move(f)), std::move(name)});
  return Code{fns_.size() - 1};
}

std::shared_ptr<const PartialFn> Registry::lookup(Code c) const {
  std::shared_lock lock(mutex_);
  if (c.value >= fns_.size()) throw UnknownCode("unknown function code " + std::to_string(c.value));
  return fns_[c.value].fn;
}

Outcome Registry::apply(Code c, const Nat& arg, Fuel fuel) const {
  auto fn = lookup(c);
  return (*fn)(arg, fuel);
}

const std::string& Registry::name(Code c) const {
  std::shared_lock lock(mutex_);
  if (c.value >= fns_.size()) throw UnknownCode("unknown function code " + std::to_string(c.value));
  return fns_[c.value].name;
}

std::size_t Registry::size() const {
  std::shared_lock lock(mutex_);
  return fns_.size();
}

Code Registry::specialize(Code c, Nat fixed) {
  auto fn = lookup(c);
  const std::string label = name(c) + "[" + fixed.str() + "]";
  return add([fn, fixed = std::move(fixed)](const Nat& a, Fuel fuel) { return (*fn)(pair(fixed, a), fuel); },
             label);
}

Code Registry::compose(Code outer, Code inner) {
  auto f = lookup(outer);
  auto g = lookup(inner);
  return add(
      [f, g](const Nat& a, Fuel fuel) {
        auto mid = (*g)(a, fuel);
        if (!mid.is_confirmed()) return mid;
        const Fuel left = fuel > mid.steps ? fuel - mid.steps : 0;
        auto out = (*f)(mid.witness, left);
        out.steps += mid.steps;
        return out;
      },
      name(outer) + " . " + name(inner));
}

Code Registry::identity() {
  {
    std::shared_lock lock(mutex_);
    if (identity_) return *identity_;
  }
  auto c = add([](const Nat& a, Fuel) { return Outcome::confirmed(a, 0); }, "identity");
  std::unique_lock lock(mutex_);
  if (!identity_) identity_ = c;
  return *identity_;
}

SetIndex Registry::add_set(CeSet s) {
  std::unique_lock lock(mutex_);
  sets_.push_back(std::move(s));
  return SetIndex{sets_.size() - 1};
}

CeSet Registry::set(SetIndex n) const {
  std::shared_lock lock(mutex_);
  if (n.value >= sets_.size()) throw UnknownCode("unknown set index " + std::to_string(n.value));
  return sets_[n.value];
}

}  // namespace bitopo
