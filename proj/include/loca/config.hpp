#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "loca/agent.hpp"
#include "loca/eps_schedule.hpp"
#include "loca/protocol.hpp"

namespace loca {

/// One method on one environment, run R times with seeds base_seed + run.
///
/// Text form (INI, every key optional except agent.name):
///
///   [experiment]  label, runs, seed, baseline
///   [environment] name
///   [agent]       name, alpha, epsilon, gamma, lambda, n, theta, max_sweeps, initial_value,
///                 optimistic_model, value_step
///   [multipliers] s_mult, alpha_mult
///   [schedule]    phase1_steps, phase2_steps, phase3_steps, episode_cap, default_mode,
///                 epsilon_decay, epsilon_phase1_start, epsilon_phase1_end
///   [evaluation]  delta_train, episodes, deadline
///
/// Defaults depend on the environment (gridworld: 1M/5k/400k steps, cap 100,
/// delta 100, deadline 40, fresh default run; mountaincar: 200k/5k/40k, cap
/// 500, delta 500, deadline 150, shuffled pretraining, decaying phase-1 epsilon).
struct ExperimentConfig {
  std::string label;
  std::string environment = "gridworld";
  std::string agent;
  /// Agent parameters before alpha_mult is applied.
  AgentConfig agent_config;
  std::size_t s_mult = 1;
  double alpha_mult = 1.0;

  std::size_t phase1_steps = 1000000;
  std::size_t phase2_steps = 5000;
  std::size_t phase3_steps = 400000;
  std::size_t episode_cap = 100;
  DefaultMode default_mode = DefaultMode::Fresh;
  EpsSchedule epsilon = EpsSchedule::constant(0.1);
  EvalConfig eval;

  std::size_t runs = 10;
  std::uint64_t base_seed = 1;
  std::string baseline = "q_learning";
};

/// Throws ParseError for malformed text and ValidationError for unknown keys,
/// unknown agent/environment names and out-of-range values. Messages name the
/// offending key.
ExperimentConfig parse_config(std::string_view text);

/// Defaults for an environment/agent pair, as parse_config would produce.
ExperimentConfig default_config(std::string_view environment, std::string_view agent);

/// Canonical text that parse_config maps back to an equal config.
std::string to_config_text(const ExperimentConfig& cfg);

/// Agent parameters with alpha_mult applied.
AgentConfig effective_agent_config(const ExperimentConfig& cfg);

LocaSchedule loca_schedule(const ExperimentConfig& cfg);
PhaseSpec phase3_spec(const ExperimentConfig& cfg);

/// e.g. "mb_su s_mult=10", "nstep_model n=2".
std::string default_label(const ExperimentConfig& cfg);

}  // namespace loca
