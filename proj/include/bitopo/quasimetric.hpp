#pragma once

#include <array>
#include <deque>
#include <functional>
#include <memory>
#include <optional>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>
#include <string>

#include <boost/container_hash/hash.hpp>

#include "bitopo/dyadic.hpp"
#include "bitopo/enumerator.hpp"
#include "bitopo/region.hpp"
#include "bitopo/registry.hpp"
#include "bitopo/space.hpp"

namespace bitopo {

/// Shape of the quasi-metric on carrier values. upper: d(y,z) = max(y-z, 0),
/// balls (u-r, inf). lower: d(y,z) = max(z-y, 0), balls (-inf, u+r). The two
/// are conjugate.
enum class MetricKind { upper, lower };

Dyadic delta_upper(const Dyadic& y, const Dyadic& z);
Dyadic delta_lower(const Dyadic& y, const Dyadic& z);

/// Quasi-metric with a dense base numbering beta. Distances between base
/// points are exact, so lt and gt are decidable.
struct QuasiMetric {
  std::string name;
  MetricKind kind = MetricKind::upper;
  std::function<Dyadic(const Nat&)> base;       // beta_a
  std::function<Nat(const Dyadic&)> base_code;  // canonical a with beta_a = y (carrier values only)
  Enumerator base_order;                        // every base code, dense order
  std::shared_ptr<const std::vector<Dyadic>> carrier;  // finite carrier, if any
  /// Strong inclusions the instance knows beyond the metric ones, by center
  /// codes (a, a').
  std::function<bool(MetricKind, const Nat&, const Nat&)> extra_precedes;

  Dyadic delta(const Dyadic& y, const Dyadic& z) const;
  Region ball(const Dyadic& center, std::int64_t e) const;
  Region ball_of(const Nat& code) const;

  /// d(beta_a, beta_b) < c * 2^-e.
  Verdict lt(const Nat& a, const Nat& b, const Dyadic& bound) const;
  /// d(beta_a, beta_b) > c * 2^-e.
  Verdict gt(const Nat& a, const Nat& b, const Dyadic& bound) const;
  /// Tuple sets <a,b,c,e> for the two relations.
  CeSet lt_set() const;
  CeSet gt_set() const;
};

QuasiMetric conjugate(const QuasiMetric& q);
/// Symmetrization: d*(beta_a, beta_b) < c * 2^-e.
Outcome sym_lt(const QuasiMetric& q, const Nat& a, const Nat& b, const Nat& c, const Nat& e);

/// Radius exponent of a basis code; nullopt when too large to represent.
std::optional<std::int64_t> radius_exponent(const Nat& m);

enum class Side { left = 0, right = 1 };

/// (center code, radius exponent, budget). Left: d(beta_a, y) < 2^-e. Right:
/// d(y, beta_b) < 2^-e.
using Probe = std::function<Verdict(const Nat&, std::int64_t, Fuel)>;

/// A point given by its two ball-membership probes. The right probe is empty
/// for weakly computable points. Leads are certified <a,e> codes ordered so
/// that small balls appear early.
struct QPoint {
  std::array<Probe, 2> probe;
  std::array<Enumerator, 2> leads;
  std::optional<Dyadic> value;  // ground truth for oracles
  std::optional<Dyadic> exact;  // the program is literally this base value
  std::optional<Nat> alias;     // index of a point known to be equal
  std::string label;

  bool has(Side s) const { return static_cast<bool>(probe[static_cast<int>(s)]); }
  QPoint conjugated() const;
};

/// Point built from raw enumerators of <a,e> (and <b,e>) codes; membership is
/// closed under radius widening.
QPoint point_from_enumerators(Enumerator left, std::optional<Enumerator> right);

/// Shared point numbering. Index <0,a> is the base point beta_a, index <1,j>
/// the j-th registered point.
class PointTable {
 public:
  explicit PointTable(QuasiMetric q) : q_(std::move(q)) {}

  const QuasiMetric& metric() const { return q_; }
  static Nat base_index(const Nat& a) { return pair(0, a); }
  Nat add(QPoint p);
  /// nullptr for indices outside the numbering.
  std::shared_ptr<const QPoint> find(const Nat& i) const;
  std::shared_ptr<const QPoint> get(const Nat& i) const;
  std::size_t registered() const;
  /// Equality semi-test: same index after following aliases, or the same
  /// exact base value. Distinct exact values give `no`.
  Verdict equal(const Nat& i, const Nat& j, Fuel budget) const;

 private:
  std::shared_ptr<const QPoint> base_point(const Nat& a) const;
  Nat resolve(Nat i) const;

  QuasiMetric q_;
  mutable std::shared_mutex mutex_;
  std::deque<std::shared_ptr<const QPoint>> points_;
  mutable std::mutex base_mutex_;
  mutable std::unordered_map<Nat, std::shared_ptr<const QPoint>, boost::hash<Nat>> base_cache_;
};

/// tau_d (Side::left, metric q) or tau_{d^c} (Side::right, metric conjugate(q))
/// over the shared table. Basis code <a,m> is ball(beta_a, 2^-m).
Space induced_space(std::shared_ptr<PointTable> table, Side side, std::shared_ptr<Registry> registry);
BiSpace induced_bispace(std::shared_ptr<PointTable> table, std::shared_ptr<Registry> registry);

/// Metric strong inclusion <i,m> < <j,n>: m > n and d(beta_j, beta_i) < 2^-n - 2^-m.
bool metric_precedes(const QuasiMetric& q, const Nat& small, const Nat& big);

Outcome ball_member(const Space& space, const Nat& i, const Nat& ball, Fuel fuel);
Nat base_to_c(const Nat& b);
/// Registers the point with its right probe dropped.
Nat c_to_wc(PointTable& table, const Nat& i);

/// W_h = { <b,e> | some f(n) strongly included in <b,e> } for the normed
/// enumeration with code f; `side` picks which probe is built.
QPoint limit_point(const Space& space, Code f, Side side);
Nat limit_pass_wc(PointTable& table, const Space& tau, Code f);
Nat bi_limit_pass_c(PointTable& table, const Space& tau, const Space& sigma, Code f_tau, Code f_sigma);

/// First neighbourhood code of x_i strongly included in `ball`.
Outcome regularity_s(const Space& space, const Nat& i, const Nat& ball, Fuel fuel);
/// Conjugate balls <v,c> with d(beta_b', beta_v) > 2^-(c-1) + 2^-n' for the
/// s-result <b',n'>.
LacombeSet regularity_t(const QuasiMetric& q, const Nat& s_result);
/// (s, t) for `space` with metric q; t recomputes s under `fuel`.
RegularityWitness regularity_witness(const Space& space, const QuasiMetric& q, Fuel fuel = 100000);

/// <u,e> strongly included in `ball`, with beta_u close to y on both sides;
/// `side` is the side `space` was induced with.
Outcome refine_toward(const Space& space, const PointTable& table, Side side, const Nat& y, const Nat& ball,
                      Fuel fuel);

}  // namespace bitopo
