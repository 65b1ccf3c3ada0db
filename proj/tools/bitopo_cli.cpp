#include <iostream>

#include <CLI11.hpp>

#include "bitopo/cli.hpp"

using namespace bitopo;

int main(int argc, char** argv) {
  CLI::App app{"Effective bi-topological spaces: basis, regularity, modulus, witness and Friedberg checks"};
  app.require_subcommand(1);

  RunConfig config;
  std::string instance = "reals";
  std::string op = "add_const", point = "0", target, n_ball, m_ball, candidate;

  auto common = [&](CLI::App* cmd) {
    cmd->add_option("--instance", instance, "reals or sierpinski")->capture_default_str();
    cmd->add_option("--seed", config.seed, "seed for sampled queries")->capture_default_str();
    cmd->add_option("--fuel", config.fuel, "fuel per search")->capture_default_str();
    cmd->add_option("--samples", config.samples, "sampled queries per side")->capture_default_str();
    cmd->add_flag("--json", config.json, "print the report as JSON");
  };
  auto* basis = app.add_subcommand("check-basis", "strong basis search on sampled triples");
  auto* regularity = app.add_subcommand("regularity", "effective pairwise regularity, both directions");
  auto* mod = app.add_subcommand("modulus", "ball around a point mapped into a target ball");
  auto* witness = app.add_subcommand("witness", "witness for non-inclusion F[B_n] in B'_m");
  auto* friedberg = app.add_subcommand("friedberg", "halting probes and candidate enumerations of {bot}");
  for (auto* cmd : {basis, regularity, mod, witness, friedberg}) common(cmd);
  for (auto* cmd : {mod, witness}) {
    cmd->add_option("--operator", op, "add_const, scale2, max0 or identity")->capture_default_str();
    cmd->add_option("--point", point, "dyadic point, e.g. 3*2^-2 or 3/4")->capture_default_str();
  }
  mod->add_option("--target", target, "codomain ball, (lo,inf) or (-inf,hi)")->required();
  witness->add_option("--n-ball", n_ball, "domain ball around the point")->required();
  witness->add_option("--m-ball", m_ball, "codomain ball around its image")->required();
  friedberg->add_option("--candidate", candidate, "bundled candidate enumeration of {bot}");

  CLI11_PARSE(app, argc, argv);

  try {
    config.instance = parse_instance(instance);
    Report report;
    if (*basis) report = cmd_check_basis(config);
    else if (*regularity) report = cmd_regularity(config);
    else if (*mod) report = cmd_modulus(config, op, point, target);
    else if (*witness) report = cmd_witness(config, op, point, n_ball, m_ball);
    else report = cmd_friedberg(config, candidate.empty() ? std::nullopt : std::optional<std::string>(candidate));
    std::cout << render(report, config.json);
    return report.exit_code();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
