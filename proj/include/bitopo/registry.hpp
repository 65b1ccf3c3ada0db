#pragma once

#include <compare>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>

#include "bitopo/enumerator.hpp"
#include "bitopo/nat.hpp"

namespace bitopo {

/// Session-local code of a registered partial function.
struct Code {
  std::uint64_t value = 0;
  friend auto operator<=>(const Code&, const Code&) = default;
};

/// Session-local index of a registered c.e. set (the W_n of the set).
struct SetIndex {
  std::uint64_t value = 0;
  friend auto operator<=>(const SetIndex&, const SetIndex&) = default;
};

/// Partial index transformer evaluated under fuel. Must be deterministic in
/// (argument, fuel) and monotone: Confirmed at fuel F stays Confirmed with the
/// same value at any larger fuel.
using PartialFn = std::function<Outcome(const Nat&, Fuel)>;

class UnknownCode : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Append-only table of partial functions and c.e. sets. Codes stay valid for
/// the lifetime of the registry; registration is thread-safe.
class Registry {
 public:
  Code add(PartialFn f, std::string name = {});
  Outcome apply(Code c, const Nat& arg, Fuel fuel) const;
  const std::string& name(Code c) const;
  std::size_t size() const;

  /// apply(specialize(c, k), a, F) == apply(c, pair(k, a), F).
  Code specialize(Code c, Nat fixed);
  /// a -> outer(inner(a)); inner's steps are charged against the same fuel.
  Code compose(Code outer, Code inner);
  Code identity();

  SetIndex add_set(CeSet s);
  CeSet set(SetIndex n) const;

 private:
  struct Entry {
    std::shared_ptr<const PartialFn> fn;
    std::string name;
  };
  std::shared_ptr<const PartialFn> lookup(Code c) const;

  mutable std::shared_mutex mutex_;
  std::deque<Entry> fns_;
  std::deque<CeSet> sets_;
  std::optional<Code> identity_;
};

/// Thread-safe cache whose entries are written once and never change.
template <class Key, class Value>
class WriteOnceCache {
 public:
  template <class Make>
  Value get_or_make(const Key& key, Make&& make) {
    {
      std::lock_guard lock(mutex_);
      if (auto it = entries_.find(key); it != entries_.end()) return it->second;
    }
    Value made = make();
    std::lock_guard lock(mutex_);
    return entries_.emplace(key, std::move(made)).first->second;
  }

  std::optional<Value> find(const Key& key) const {
    std::lock_guard lock(mutex_);
    if (auto it = entries_.find(key); it != entries_.end()) return it->second;
    return std::nullopt;
  }

 private:
  mutable std::mutex mutex_;
  std::map<Key, Value> entries_;
};

}  // namespace bitopo
