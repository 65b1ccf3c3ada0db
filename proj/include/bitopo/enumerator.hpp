#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bitopo/nat.hpp"

namespace bitopo {

/// Deterministic step-indexed producer of naturals. step(k) may yield nothing,
/// which is how partiality is expressed without divergence. The enumerated
/// set is the union of everything produced.
class Enumerator {
 public:
  using Step = std::function<std::optional<Nat>(std::uint64_t)>;

  Enumerator() : Enumerator(empty()) {}
  explicit Enumerator(Step step) : step_(std::make_shared<const Step>(std::move(step))) {}

  std::optional<Nat> operator()(std::uint64_t k) const { return (*step_)(k); }

  static Enumerator empty();
  /// 0, 1, 2, ...
  static Enumerator naturals();
  /// The listed values, then nothing.
  static Enumerator of(std::vector<Nat> values);
  /// k -> k if keep(k).
  static Enumerator filtered(std::function<bool(const Nat&)> keep);

 private:
  std::shared_ptr<const Step> step_;
};

/// Even steps from `a`, odd steps from `b`.
Enumerator interleave(Enumerator a, Enumerator b);
Enumerator map(Enumerator e, std::function<Nat(const Nat&)> f);

/// Result of a fuel-bounded search. Exhausted means "unknown", never "no".
struct Outcome {
  enum class Kind { confirmed, exhausted };

  Kind kind = Kind::exhausted;
  Nat witness = 0;
  std::uint64_t steps = 0;

  static Outcome confirmed(Nat w, std::uint64_t steps) { return {Kind::confirmed, std::move(w), steps}; }
  static Outcome exhausted(std::uint64_t steps) { return {Kind::exhausted, 0, steps}; }

  bool is_confirmed() const { return kind == Kind::confirmed; }
  explicit operator bool() const { return is_confirmed(); }
  friend bool operator==(const Outcome&, const Outcome&) = default;
};

/// Answer of a semi-test under a budget. `no` is only ever produced from an
/// exact refutation (instance comparisons on the dense base, or a bracket
/// that already excludes the ball).
enum class Truth { yes, no, unknown };

struct Verdict {
  Truth truth = Truth::unknown;
  std::uint64_t steps = 0;

  static Verdict yes(std::uint64_t steps = 0) { return {Truth::yes, steps}; }
  static Verdict no(std::uint64_t steps = 0) { return {Truth::no, steps}; }
  static Verdict unknown(std::uint64_t steps) { return {Truth::unknown, steps}; }
  static Verdict decide(bool b) { return b ? yes() : no(); }

  bool is_yes() const { return truth == Truth::yes; }
  bool is_no() const { return truth == Truth::no; }
};

/// x, budget -> verdict. Must be monotone: yes or no at budget b stays the
/// same at any larger budget.
using SemiTest = std::function<Verdict(const Nat&, Fuel)>;
/// x, budget -> produced value (Confirmed) or nothing yet.
using Producer = std::function<Outcome(const Nat&, Fuel)>;

/// Conjunction of two semi-tests sharing one budget.
Verdict both(const Verdict& a, const std::function<Verdict()>& b);

/// A computably enumerable set. Three presentations are supported and each
/// provides both an enumerator and a membership semi-test:
///  - listed: an enumerator; membership scans it;
///  - tested: a semi-test; the enumerator runs the test on every natural;
///  - image: { produce(s) | s enumerated by sources }.
class CeSet {
 public:
  CeSet() : CeSet(listed(Enumerator::empty())) {}

  static CeSet listed(Enumerator e);
  static CeSet tested(SemiTest test);
  /// Test-backed set with an enumerator supplied by the caller; the two must
  /// describe the same set.
  static CeSet tested(SemiTest test, Enumerator enumerator);
  static CeSet image(Enumerator sources, Producer produce);
  /// As above; `viable` answers no for sources that never produce, which
  /// lets find() retire them.
  static CeSet image(Enumerator sources, Producer produce, SemiTest viable);
  static CeSet decidable(std::function<bool(const Nat&)> member);

  const Enumerator& enumerator() const { return rep_->enumerator; }
  Verdict test(const Nat& x, Fuel budget) const;
  bool has_direct_test() const { return static_cast<bool>(rep_->test); }

  /// First element x (under the fixed schedule) with pred(x) yes.
  Outcome find(const SemiTest& pred, Fuel fuel) const;

 private:
  struct Rep {
    Enumerator enumerator;
    SemiTest test;           // tested presentation
    Enumerator sources;      // image presentation
    Producer produce;
    SemiTest viable;
  };
  explicit CeSet(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
  std::shared_ptr<const Rep> rep_;
};

/// Countable family of enumerators; `count` empty means infinitely many.
struct TaskFamily {
  std::function<Enumerator(std::uint64_t)> task;
  std::optional<std::uint64_t> count;
};

/// Fixed fair diagonal schedule: round d = 0, 1, ... visits task t = 0..d
/// (only existing tasks) at step d - t; each visit costs one tick. Returns
/// Confirmed(pair(task, value)) for the first accepted value.
Outcome dovetail(const TaskFamily& tasks,
                 const std::function<bool(std::uint64_t, const Nat&)>& accept, Fuel fuel);

/// Dovetails candidates against a semi-test. Round d admits candidate step d
/// and then tests each live candidate admitted at round r whose age d - r is
/// 0 or a power of two, with budget d - r; `no` retires a candidate. Costs
/// one tick per admission plus max(1, steps) per test. Confirmed(candidate)
/// on the first `yes`.
Outcome search(const Enumerator& candidates, const SemiTest& test, Fuel fuel);

/// Scans e for x within fuel steps.
Outcome scan_for(const Enumerator& e, const Nat& x, Fuel fuel);

}  // namespace bitopo
