#pragma once

#include <optional>
#include <span>
#include <vector>

#include "loca/agent.hpp"
#include "loca/tabular_model.hpp"
#include "loca/value_iteration.hpp"

namespace loca {

/// Action values, row-major by state.
struct TabularQ {
  TabularQ(std::size_t states, std::size_t actions, double init) : states(states), actions(actions), q(states * actions, init) {}

  double& at(std::size_t s, Action a) { return q[s * actions + a]; }
  double at(std::size_t s, Action a) const { return q[s * actions + a]; }
  std::span<const double> row(std::size_t s) const { return {q.data() + s * actions, actions}; }

  std::size_t states;
  std::size_t actions;
  std::vector<double> q;
};

/// Dutch eligibility trace plus the previous-step value of true online Sarsa.
struct DutchTrace {
  explicit DutchTrace(std::size_t size) : e(size, 0.0) {}
  void reset();

  std::vector<double> e;
  double q_old = 0.0;
};

struct TabularStep {
  std::size_t state = 0;
  Action action = 0;
  double reward = 0.0;
  std::size_t next = 0;
  Action next_action = 0;
  bool terminal = false;
};

/// One true online Sarsa(lambda) update with indicator features:
///   delta = r + gamma Q' - Q
///   e     = gamma lambda e + (1 - alpha gamma lambda e(s,a)) 1_{s,a}
///   q    += alpha (delta + Q - Q_old) e - alpha (Q - Q_old) 1_{s,a}
///   Q_old = Q'
void sarsa_dutch_step(TabularQ& q, DutchTrace& trace, const TabularStep& t, double alpha, double gamma,
                      double lambda);

/// q(s,a) += alpha (r + gamma max_b q(s',b) - q(s,a)); no bootstrap on terminal.
void q_learning_step(TabularQ& q, const TabularStep& t, double alpha, double gamma);

class SarsaLambdaAgent final : public Agent {
 public:
  SarsaLambdaAgent(const EnvDescriptor& env, const AgentConfig& cfg);

  std::string_view name() const override { return "sarsa_lambda"; }
  void begin_episode() override;
  Action act(const StateRef& s, Rng& rng) override;
  void learn(const Transition& t, Rng& rng) override;
  void end_episode(EpisodeEnd end) override;
  Action policy(const StateRef& s, double epsilon, Rng& rng) const override;
  void set_epsilon(double epsilon) override { cfg_.epsilon = epsilon; }
  double epsilon() const override { return cfg_.epsilon; }
  std::uint64_t content_hash() const override;

  const TabularQ& q() const { return q_; }

 private:
  AgentConfig cfg_;
  TabularQ q_;
  DutchTrace trace_;
  // A' chosen during the last non-terminal update; taken on the next act().
  std::optional<Action> pending_;
};

class QLearningAgent final : public Agent {
 public:
  QLearningAgent(const EnvDescriptor& env, const AgentConfig& cfg);

  std::string_view name() const override { return "q_learning"; }
  void begin_episode() override {}
  Action act(const StateRef& s, Rng& rng) override { return policy(s, cfg_.epsilon, rng); }
  void learn(const Transition& t, Rng& rng) override;
  void end_episode(EpisodeEnd) override {}
  Action policy(const StateRef& s, double epsilon, Rng& rng) const override;
  void set_epsilon(double epsilon) override { cfg_.epsilon = epsilon; }
  double epsilon() const override { return cfg_.epsilon; }
  std::uint64_t content_hash() const override;

  const TabularQ& q() const { return q_; }

 private:
  AgentConfig cfg_;
  TabularQ q_;
};

enum class Planning {
  /// Value iteration to tolerance after every model update (mb_vi).
  FullValueIteration,
  /// One Bellman backup of the current state before acting (mb_su).
  SingleUpdate,
};

/// Tabular model learner with optimistic initialization: every row starts as
/// a point mass on a terminal with reward `initial_value`.
class ModelBasedAgent final : public Agent {
 public:
  ModelBasedAgent(const EnvDescriptor& env, const AgentConfig& cfg, Planning planning);

  std::string_view name() const override { return planning_ == Planning::FullValueIteration ? "mb_vi" : "mb_su"; }
  void begin_episode() override {}
  Action act(const StateRef& s, Rng& rng) override;
  void learn(const Transition& t, Rng& rng) override;
  void end_episode(EpisodeEnd) override {}
  Action policy(const StateRef& s, double epsilon, Rng& rng) const override;
  void set_epsilon(double epsilon) override { cfg_.epsilon = epsilon; }
  double epsilon() const override { return cfg_.epsilon; }
  std::uint64_t content_hash() const override;

  const TabularModel& model() const { return model_; }
  const ValueTable& values() const;
  /// Sweeps used by the last planning call (mb_vi only).
  int last_sweeps() const { return last_sweeps_; }

 private:
  AgentConfig cfg_;
  Planning planning_;
  TabularModel model_;
  std::optional<IncrementalPlanner> planner_;
  ValueTable values_;
  int last_sweeps_ = 0;
};

/// Per-episode buffer and estimates of the on-policy n-step model.
struct NStepModelState {
  NStepModelState(std::size_t states, std::size_t actions, int n,
                  TabularModel::Init init = TabularModel::Init::Zero, double initial_reward = 4.0);

  int n;
  TabularModel model;  // n-step transition and reward estimates
  ValueTable values;
  struct Sample {
    std::size_t state;
    Action action;
    double reward;
  };
  std::vector<Sample> episode;
  /// Outcome index of the last observed transition of the current episode.
  std::optional<std::size_t> last_outcome;
  bool last_was_terminal = false;
};

/// Updates the n-step model from the buffered episode and clears the buffer.
/// Targets beyond the end of a terminated episode use the terminal outcome
/// with the reward sum truncated there; for a truncated episode only samples
/// whose t+n lies within the observed steps are used. Throws
/// CalledMidEpisode when `end` is Terminal but no terminal was observed.
void nstep_episode_finalize(NStepModelState& st, double alpha, double gamma, EpisodeEnd end);

class NStepModelAgent final : public Agent {
 public:
  NStepModelAgent(const EnvDescriptor& env, const AgentConfig& cfg);

  std::string_view name() const override { return "nstep_model"; }
  void begin_episode() override;
  Action act(const StateRef& s, Rng& rng) override;
  void learn(const Transition& t, Rng& rng) override;
  void end_episode(EpisodeEnd end) override;
  Action policy(const StateRef& s, double epsilon, Rng& rng) const override;
  void set_epsilon(double epsilon) override { cfg_.epsilon = epsilon; }
  double epsilon() const override { return cfg_.epsilon; }
  std::uint64_t content_hash() const override;

  const NStepModelState& state() const { return st_; }

 private:
  AgentConfig cfg_;
  NStepModelState st_;
};

}  // namespace loca
