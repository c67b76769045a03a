#include "loca/linear_sarsa.hpp"

#include <algorithm>

#include "loca/error.hpp"
#include "loca/policy.hpp"

namespace loca {

double LinearSarsaState::value(std::span<const std::size_t> active) const {
  double q = 0.0;
  for (const std::size_t i : active) q += w[i];
  return q;
}

void LinearSarsaState::reset_trace() {
  std::fill(z.begin(), z.end(), 0.0);
  q_old = 0.0;
}

void true_online_sarsa_linear_step(LinearSarsaState& st, std::span<const std::size_t> phi, double reward,
                                   std::span<const std::size_t> phi_next, double alpha, double gamma,
                                   double lambda) {
  if (phi.empty()) throw Error(Errc::InvalidArgument, "empty feature set");
  const double step = alpha;
  const double q = st.value(phi);
  const double q_next = st.value(phi_next);
  const double delta = reward + gamma * q_next - q;
  const double decay = gamma * lambda;

  double z_dot_phi = 0.0;
  for (const std::size_t i : phi) z_dot_phi += st.z[i];
  for (double& z : st.z) z *= decay;
  const double bump = 1.0 - step * decay * z_dot_phi;
  for (const std::size_t i : phi) st.z[i] += bump;

  const double scale = step * (delta + q - st.q_old);
  for (std::size_t i = 0; i < st.w.size(); ++i) st.w[i] += scale * st.z[i];
  const double correction = step * (q - st.q_old);
  for (const std::size_t i : phi) st.w[i] -= correction;
  st.q_old = q_next;
}

// ---------------------------------------------------------------------------

LinearSarsaAgent::LinearSarsaAgent(const EnvDescriptor& env, const AgentConfig& cfg, TileCoder coder)
    : cfg_(cfg), actions_(env.action_count), coder_(coder), st_(env.action_count, TileCoder::kFeatures) {
  validate(cfg_);
}

LinearSarsaAgent::Phi LinearSarsaAgent::phi(const ContinuousPoint& p, Action a) const {
  Phi active = coder_.features(p.position, p.velocity);
  for (auto& i : active) i += a * TileCoder::kFeatures;
  return active;
}

std::vector<double> LinearSarsaAgent::q_values(const ContinuousPoint& p) const {
  const auto base = coder_.features(p.position, p.velocity);
  std::vector<double> q(actions_, 0.0);
  for (Action a = 0; a < actions_; ++a) {
    const std::size_t offset = a * TileCoder::kFeatures;
    for (const std::size_t i : base) q[a] += st_.w[offset + i];
  }
  return q;
}

void LinearSarsaAgent::begin_episode() {
  st_.reset_trace();
  pending_.reset();
}

Action LinearSarsaAgent::act(const StateRef& s, Rng& rng) {
  if (pending_) return *pending_;
  return policy(s, cfg_.epsilon, rng);
}

void LinearSarsaAgent::learn(const Transition& t, Rng& rng) {
  const Phi current = phi(continuous_point(t.state), t.action);
  if (t.terminal) {
    true_online_sarsa_linear_step(st_, current, t.reward, {}, cfg_.alpha, cfg_.gamma, cfg_.lambda);
    pending_.reset();
    return;
  }
  const ContinuousPoint next = continuous_point(t.next);
  const Action next_action = policy(t.next, cfg_.epsilon, rng);
  const Phi following = phi(next, next_action);
  true_online_sarsa_linear_step(st_, current, t.reward, following, cfg_.alpha, cfg_.gamma, cfg_.lambda);
  pending_ = next_action;
}

void LinearSarsaAgent::end_episode(EpisodeEnd /*end*/) {
  st_.reset_trace();
  pending_.reset();
}

Action LinearSarsaAgent::policy(const StateRef& s, double epsilon, Rng& rng) const {
  return eps_greedy_action(q_values(continuous_point(s)), epsilon, rng);
}

std::uint64_t LinearSarsaAgent::content_hash() const {
  std::uint64_t h = fnv1a("sarsa_lambda_tc");
  h = fnv1a(st_.w.data(), st_.w.size() * sizeof(double), h);
  h = fnv1a(st_.z.data(), st_.z.size() * sizeof(double), h);
  h = fnv1a(&st_.q_old, sizeof(double), h);
  const std::size_t pending = pending_ ? *pending_ : static_cast<std::size_t>(-1);
  h = fnv1a(&pending, sizeof pending, h);
  return fnv1a(&cfg_.epsilon, sizeof(double), h);
}

}  // namespace loca
