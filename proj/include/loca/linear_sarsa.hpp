#pragma once

#include <optional>
#include <span>
#include <vector>

#include "loca/agent.hpp"
#include "loca/tile_coder.hpp"

namespace loca {

/// Weights and dutch trace of linear true online Sarsa(lambda) with sparse
/// binary features. Index space: action * TileCoder::kFeatures + feature.
struct LinearSarsaState {
  LinearSarsaState(std::size_t actions, std::size_t features_per_action)
      : w(actions * features_per_action, 0.0), z(actions * features_per_action, 0.0) {}

  double value(std::span<const std::size_t> active) const;
  void reset_trace();

  std::vector<double> w;
  std::vector<double> z;
  double q_old = 0.0;
};

/// True online Sarsa(lambda) update with binary features phi(s,a) and
/// phi(s',a') (empty when s' is terminal). Every active feature moves with
/// step size a' = alpha:
///   z = gamma lambda z + (1 - a' gamma lambda z.phi) phi
///   w += a' (delta + Q - Q_old) z - a' (Q - Q_old) phi
void true_online_sarsa_linear_step(LinearSarsaState& st, std::span<const std::size_t> phi, double reward,
                                   std::span<const std::size_t> phi_next, double alpha, double gamma,
                                   double lambda);

class LinearSarsaAgent final : public Agent {
 public:
  LinearSarsaAgent(const EnvDescriptor& env, const AgentConfig& cfg, TileCoder coder);

  std::string_view name() const override { return "sarsa_lambda_tc"; }
  void begin_episode() override;
  Action act(const StateRef& s, Rng& rng) override;
  void learn(const Transition& t, Rng& rng) override;
  void end_episode(EpisodeEnd end) override;
  Action policy(const StateRef& s, double epsilon, Rng& rng) const override;
  void set_epsilon(double epsilon) override { cfg_.epsilon = epsilon; }
  double epsilon() const override { return cfg_.epsilon; }
  std::uint64_t content_hash() const override;

  /// Q(s, .) for every action.
  std::vector<double> q_values(const ContinuousPoint& p) const;
  const LinearSarsaState& state() const { return st_; }

 private:
  using Phi = std::array<std::size_t, TileCoder::kTilings>;
  Phi phi(const ContinuousPoint& p, Action a) const;

  AgentConfig cfg_;
  std::size_t actions_;
  TileCoder coder_;
  LinearSarsaState st_;
  std::optional<Action> pending_;
};

}  // namespace loca
