#include "loca/tabular_agents.hpp"

#include <algorithm>
#include <cmath>

#include "loca/error.hpp"
#include "loca/policy.hpp"

namespace loca {
namespace {

std::size_t require_tabular(const EnvDescriptor& env) {
  if (!env.tabular()) throw Error(Errc::InvalidArgument, "tabular agent on continuous environment " + env.name);
  return env.state_count;
}

std::size_t next_index(const Transition& t, std::size_t states) {
  return t.terminal ? states + static_cast<std::size_t>(*t.terminal) : tabular_index(t.next);
}

template <typename T>
std::uint64_t hash_vector(const std::vector<T>& v, std::uint64_t h) {
  return fnv1a(v.data(), v.size() * sizeof(T), h);
}

}  // namespace

void DutchTrace::reset() {
  std::fill(e.begin(), e.end(), 0.0);
  q_old = 0.0;
}

void sarsa_dutch_step(TabularQ& q, DutchTrace& trace, const TabularStep& t, double alpha, double gamma,
                      double lambda) {
  const std::size_t sa = t.state * q.actions + t.action;
  const double current = q.q[sa];
  const double next = t.terminal ? 0.0 : q.at(t.next, t.next_action);
  const double delta = t.reward + gamma * next - current;
  const double decay = gamma * lambda;

  const double e_sa = trace.e[sa];
  for (double& e : trace.e) e *= decay;
  trace.e[sa] += 1.0 - alpha * decay * e_sa;

  const double step = alpha * (delta + current - trace.q_old);
  for (std::size_t i = 0; i < q.q.size(); ++i) q.q[i] += step * trace.e[i];
  q.q[sa] -= alpha * (current - trace.q_old);
  trace.q_old = next;
}

void q_learning_step(TabularQ& q, const TabularStep& t, double alpha, double gamma) {
  double bootstrap = 0.0;
  if (!t.terminal) {
    const auto row = q.row(t.next);
    bootstrap = *std::max_element(row.begin(), row.end());
  }
  double& v = q.at(t.state, t.action);
  v += alpha * (t.reward + gamma * bootstrap - v);
}

// ---------------------------------------------------------------------------

SarsaLambdaAgent::SarsaLambdaAgent(const EnvDescriptor& env, const AgentConfig& cfg)
    : cfg_(cfg),
      q_(require_tabular(env), env.action_count, cfg.initial_value),
      trace_(env.state_count * env.action_count) {
  validate(cfg_);
}

void SarsaLambdaAgent::begin_episode() {
  trace_.reset();
  pending_.reset();
}

Action SarsaLambdaAgent::act(const StateRef& s, Rng& rng) {
  if (pending_) return *pending_;
  return policy(s, cfg_.epsilon, rng);
}

void SarsaLambdaAgent::learn(const Transition& t, Rng& rng) {
  TabularStep step{tabular_index(t.state), t.action, t.reward, 0, 0, t.terminal.has_value()};
  if (!step.terminal) {
    step.next = tabular_index(t.next);
    step.next_action = policy(t.next, cfg_.epsilon, rng);
  }
  sarsa_dutch_step(q_, trace_, step, cfg_.alpha, cfg_.gamma, cfg_.lambda);
  if (step.terminal) {
    pending_.reset();
  } else {
    pending_ = step.next_action;
  }
}

void SarsaLambdaAgent::end_episode(EpisodeEnd /*end*/) {
  trace_.reset();
  pending_.reset();
}

Action SarsaLambdaAgent::policy(const StateRef& s, double epsilon, Rng& rng) const {
  return eps_greedy_action(q_.row(tabular_index(s)), epsilon, rng);
}

std::uint64_t SarsaLambdaAgent::content_hash() const {
  std::uint64_t h = hash_vector(q_.q, fnv1a("sarsa_lambda"));
  h = hash_vector(trace_.e, h);
  h = fnv1a(&trace_.q_old, sizeof(double), h);
  const std::size_t pending = pending_ ? *pending_ : static_cast<std::size_t>(-1);
  h = fnv1a(&pending, sizeof pending, h);
  return fnv1a(&cfg_.epsilon, sizeof(double), h);
}

// ---------------------------------------------------------------------------

QLearningAgent::QLearningAgent(const EnvDescriptor& env, const AgentConfig& cfg)
    : cfg_(cfg), q_(require_tabular(env), env.action_count, cfg.initial_value) {
  validate(cfg_);
}

void QLearningAgent::learn(const Transition& t, Rng& /*rng*/) {
  TabularStep step{tabular_index(t.state), t.action, t.reward, 0, 0, t.terminal.has_value()};
  if (!step.terminal) step.next = tabular_index(t.next);
  q_learning_step(q_, step, cfg_.alpha, cfg_.gamma);
}

Action QLearningAgent::policy(const StateRef& s, double epsilon, Rng& rng) const {
  return eps_greedy_action(q_.row(tabular_index(s)), epsilon, rng);
}

std::uint64_t QLearningAgent::content_hash() const {
  const std::uint64_t h = hash_vector(q_.q, fnv1a("q_learning"));
  return fnv1a(&cfg_.epsilon, sizeof(double), h);
}

// ---------------------------------------------------------------------------

ModelBasedAgent::ModelBasedAgent(const EnvDescriptor& env, const AgentConfig& cfg, Planning planning)
    : cfg_(cfg),
      planning_(planning),
      model_(require_tabular(env), env.action_count, TabularModel::Init::OptimisticTerminal, cfg.initial_value) {
  validate(cfg_);
  if (planning_ == Planning::FullValueIteration) {
    // Changes below the tolerance are held back until they add up to it.
    planner_.emplace(model_, ValueTable(model_.state_count(), 0.0), cfg_.theta);
    last_sweeps_ = planner_->plan(model_, cfg_.gamma, cfg_.theta, cfg_.max_sweeps);
  } else {
    values_.assign(model_.state_count(), 0.0);
  }
}

const ValueTable& ModelBasedAgent::values() const { return planner_ ? planner_->values() : values_; }

Action ModelBasedAgent::act(const StateRef& s, Rng& rng) {
  if (planning_ == Planning::SingleUpdate) {
    const std::size_t i = tabular_index(s);
    values_[i] = greedy_backup(model_, values_, i, cfg_.gamma);
  }
  return policy(s, cfg_.epsilon, rng);
}

void ModelBasedAgent::learn(const Transition& t, Rng& /*rng*/) {
  const std::size_t s = tabular_index(t.state);
  model_.ema_update(s, t.action, t.reward, next_index(t, model_.state_count()), cfg_.alpha);
  if (planner_) {
    planner_->notify_row_changed(model_, s, t.action);
    last_sweeps_ = planner_->plan(model_, cfg_.gamma, cfg_.theta, cfg_.max_sweeps);
  }
}

Action ModelBasedAgent::policy(const StateRef& s, double epsilon, Rng& rng) const {
  const auto q = q_from_model(model_, values(), tabular_index(s), cfg_.gamma);
  return eps_greedy_action(q, epsilon, rng);
}

std::uint64_t ModelBasedAgent::content_hash() const {
  std::uint64_t h = model_.hash(fnv1a(name()));
  h = hash_vector(values(), h);
  return fnv1a(&cfg_.epsilon, sizeof(double), h);
}

// ---------------------------------------------------------------------------

NStepModelState::NStepModelState(std::size_t states, std::size_t actions, int n, TabularModel::Init init,
                                 double initial_reward)
    : n(n), model(states, actions, init, initial_reward), values(states, 0.0) {}

void nstep_episode_finalize(NStepModelState& st, double alpha, double gamma, EpisodeEnd end) {
  if (end == EpisodeEnd::Terminal && !st.last_was_terminal)
    throw Error(Errc::CalledMidEpisode, "episode has not reached a terminal");
  const std::size_t length = st.episode.size();
  const auto n = static_cast<std::size_t>(st.n);
  // S_k for k = 0..length; S_length is the final outcome.
  auto state_at = [&](std::size_t k) { return k < length ? st.episode[k].state : *st.last_outcome; };
  for (std::size_t t = 0; t < length; ++t) {
    const bool beyond = t + n > length;
    if (beyond && !st.last_was_terminal) continue;  // truncated: S_{t+n} never observed
    double target_reward = 0.0;
    double discount = 1.0;
    const std::size_t stop = std::min(t + n, length);
    for (std::size_t k = t; k < stop; ++k) {
      target_reward += discount * st.episode[k].reward;
      discount *= gamma;
    }
    const std::size_t target = beyond ? *st.last_outcome : state_at(t + n);
    st.model.ema_update(st.episode[t].state, st.episode[t].action, target_reward, target, alpha);
  }
  st.episode.clear();
  st.last_outcome.reset();
  st.last_was_terminal = false;
}

NStepModelAgent::NStepModelAgent(const EnvDescriptor& env, const AgentConfig& cfg)
    : cfg_(cfg),
      st_(require_tabular(env), env.action_count, cfg.n,
          cfg.optimistic_model ? TabularModel::Init::OptimisticTerminal : TabularModel::Init::Zero, cfg.initial_value) {
  validate(cfg_);
}

void NStepModelAgent::begin_episode() {
  st_.episode.clear();
  st_.last_outcome.reset();
  st_.last_was_terminal = false;
}

Action NStepModelAgent::act(const StateRef& s, Rng& rng) {
  const std::size_t i = tabular_index(s);
  const auto q = q_from_model(st_.model, st_.values, i, cfg_.gamma, st_.n);
  const double best = *std::max_element(q.begin(), q.end());
  const double step = cfg_.value_step > 0.0 ? cfg_.value_step : cfg_.alpha;
  st_.values[i] = (1.0 - step) * st_.values[i] + step * best;
  return eps_greedy_action(q, cfg_.epsilon, rng);
}

void NStepModelAgent::learn(const Transition& t, Rng& /*rng*/) {
  st_.episode.push_back({tabular_index(t.state), t.action, t.reward});
  st_.last_outcome = next_index(t, st_.model.state_count());
  st_.last_was_terminal = t.terminal.has_value();
}

void NStepModelAgent::end_episode(EpisodeEnd end) { nstep_episode_finalize(st_, cfg_.alpha, cfg_.gamma, end); }

Action NStepModelAgent::policy(const StateRef& s, double epsilon, Rng& rng) const {
  const auto q = q_from_model(st_.model, st_.values, tabular_index(s), cfg_.gamma, st_.n);
  return eps_greedy_action(q, epsilon, rng);
}

std::uint64_t NStepModelAgent::content_hash() const {
  std::uint64_t h = st_.model.hash(fnv1a("nstep_model"));
  h = hash_vector(st_.values, h);
  for (const auto& smp : st_.episode) {
    h = fnv1a(&smp.state, sizeof smp.state, h);
    h = fnv1a(&smp.action, sizeof smp.action, h);
    h = fnv1a(&smp.reward, sizeof smp.reward, h);
  }
  const std::size_t last = st_.last_outcome.value_or(static_cast<std::size_t>(-1));
  h = fnv1a(&last, sizeof last, h);
  h = fnv1a(&st_.last_was_terminal, sizeof(bool), h);
  return fnv1a(&cfg_.epsilon, sizeof(double), h);
}

}  // namespace loca
