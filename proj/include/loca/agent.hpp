#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "loca/mdp.hpp"
#include "loca/rng.hpp"

namespace loca {

struct Transition {
  StateRef state;
  Action action = 0;
  double reward = 0.0;
  StateRef next;
  std::optional<TerminalTag> terminal;
};

enum class EpisodeEnd { Terminal, Truncated };

/// Hyper-parameters shared by all agents; fields an agent does not use are ignored.
struct AgentConfig {
  double alpha = 0.05;
  double epsilon = 0.1;
  double gamma = 0.97;
  double lambda = 0.95;
  int n = 1;
  /// Value-iteration tolerance and sweep cap for mb_vi.
  double theta = 1e-6;
  int max_sweeps = 1000;
  /// Optimistic initial value / reward.
  double initial_value = 4.0;
  /// nstep_model only: start the n-step model at the optimistic terminal
  /// outcome (reward initial_value) instead of all zeros.
  bool optimistic_model = false;
  /// nstep_model only: step of the value update toward max_a Q; 0 means alpha.
  double value_step = 0.0;
};

/// Throws InvalidArgument when a field is out of range.
void validate(const AgentConfig& cfg);

/// Learning agent driven by the protocol loop:
///
///   begin_episode(); a = act(s); env step; learn(t); ... end_episode(end)
///
/// `policy` is the side-effect-free action rule used for evaluation and for
/// phases with learning disabled. Everything that may change between two
/// calls is covered by content_hash().
class Agent {
 public:
  virtual ~Agent() = default;

  virtual std::string_view name() const = 0;
  virtual void begin_episode() = 0;
  virtual Action act(const StateRef& s, Rng& rng) = 0;
  virtual void learn(const Transition& t, Rng& rng) = 0;
  virtual void end_episode(EpisodeEnd end) = 0;
  virtual Action policy(const StateRef& s, double epsilon, Rng& rng) const = 0;

  virtual void set_epsilon(double epsilon) = 0;
  virtual double epsilon() const = 0;
  virtual std::uint64_t content_hash() const = 0;
};

/// Per-agent defaults: sarsa_lambda alpha 0.05 lambda 0.95, q_learning 0.2,
/// mb_vi / mb_su 0.2, nstep_model 0.04, sarsa_lambda_tc 0.05 with lambda 0.9.
AgentConfig default_agent_config(std::string_view agent_name);

std::vector<std::string> registered_agents();
bool is_registered_agent(std::string_view name);

/// Builds a registered agent for the given environment. Tabular agents
/// reject continuous environments and vice versa (InvalidArgument).
std::unique_ptr<Agent> make_agent(std::string_view name, const EnvDescriptor& env, const AgentConfig& cfg);

}  // namespace loca
