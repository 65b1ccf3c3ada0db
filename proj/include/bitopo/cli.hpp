#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bitopo/continuity.hpp"
#include "bitopo/instances.hpp"
#include "bitopo/report.hpp"

namespace bitopo {

enum class InstanceKind { reals, sierpinski };

struct RunConfig {
  std::uint64_t seed = 0;
  Fuel fuel = 100000;
  std::size_t samples = 50;
  InstanceKind instance = InstanceKind::reals;
  bool json = false;
};

/// Bad flags or a violated precondition; the front end exits with 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

InstanceKind parse_instance(const std::string& name);
std::string instance_name(InstanceKind kind);
QmInstance make_instance(InstanceKind kind);

/// Basis code for a ball spec: "(lo,inf)" is a U ball, "(-inf,hi)" an L ball.
/// Returns the side with the code.
std::pair<Side, Nat> parse_ball(const QmInstance& reals, const std::string& spec);

/// sb_search on seeded (i, m, n) with x_i in B_m and B_n, per side; every
/// answer is checked against the oracle.
Report cmd_check_basis(const RunConfig& config);

/// Replaces the regularity witness of a side, for fault injection.
using RegularityOverride = std::function<RegularityWitness(const QmInstance&, Side)>;

/// Effective regularity in both directions on seeded queries.
Report cmd_regularity(const RunConfig& config, const RegularityOverride& override_witness = {});

Report cmd_modulus(const RunConfig& config, const std::string& op, const std::string& point, const std::string& target);

/// Oracle checks of a confirmed r: z in B_n, F(z) in the t'-cover (first
/// `t_prefix` codes), F(z) outside the s'-ball.
CheckRecord check_witness_point(const EffectiveOperator& F, Side side, const NonInclusionWitness& w,
                                const RegularityWitness& codomain_regularity, const Nat& i, const Nat& n, const Nat& m,
                                const Outcome& r, std::size_t t_prefix = std::size_t{1} << 20);

Report cmd_witness(const RunConfig& config, const std::string& op, const std::string& point, const std::string& n_ball,
                   const std::string& m_ball);

/// Bundled probes: 10 programs halting after 1..10 steps, 10 that never halt.
std::vector<Code> probe_battery(Registry& registry);
/// Named candidate enumerations of {bot}: empty, first-probe, bot-only,
/// nonhalting, top.
std::optional<BotCandidate> bundled_candidate(const std::string& name, std::uint64_t seed);
std::vector<std::string> bundled_candidate_names();

Report cmd_friedberg(const RunConfig& config, const std::optional<std::string>& candidate);

/// Text or JSON rendering; JSON is a single document with a trailing newline.
std::string render(const Report& report, bool json);

}  // namespace bitopo
