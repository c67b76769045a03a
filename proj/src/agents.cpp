#include <string>

#include "loca/agent.hpp"
#include "loca/error.hpp"
#include "loca/linear_sarsa.hpp"
#include "loca/tabular_agents.hpp"

namespace loca {

void validate(const AgentConfig& cfg) {
  auto fail = [](const std::string& what) { throw Error(Errc::InvalidArgument, what); };
  if (!(cfg.alpha > 0.0 && cfg.alpha <= 1.0)) fail("alpha must be in (0, 1]");
  if (!(cfg.epsilon >= 0.0 && cfg.epsilon <= 1.0)) fail("epsilon must be in [0, 1]");
  if (!(cfg.gamma > 0.0 && cfg.gamma < 1.0)) fail("gamma must be in (0, 1)");
  if (!(cfg.lambda >= 0.0 && cfg.lambda <= 1.0)) fail("lambda must be in [0, 1]");
  if (cfg.n < 1) fail("n must be >= 1");
  if (!(cfg.theta > 0.0)) fail("theta must be positive");
  if (cfg.max_sweeps < 1) fail("max_sweeps must be >= 1");
  if (!(cfg.value_step >= 0.0 && cfg.value_step <= 1.0)) fail("value_step must be in [0, 1]");
}

AgentConfig default_agent_config(std::string_view name) {
  AgentConfig cfg;
  if (name == "sarsa_lambda") {
    cfg.alpha = 0.05;
    cfg.lambda = 0.95;
  } else if (name == "q_learning") {
    cfg.alpha = 0.2;
  } else if (name == "mb_vi" || name == "mb_su") {
    cfg.alpha = 0.2;
  } else if (name == "nstep_model") {
    cfg.alpha = 0.04;
  } else if (name == "sarsa_lambda_tc") {
    cfg.alpha = 0.05;
    cfg.lambda = 0.9;
    cfg.gamma = 0.99;
  }
  return cfg;
}

std::vector<std::string> registered_agents() {
  return {"sarsa_lambda", "q_learning", "mb_vi", "mb_su", "nstep_model", "sarsa_lambda_tc"};
}

bool is_registered_agent(std::string_view name) {
  for (const auto& a : registered_agents())
    if (a == name) return true;
  return false;
}

std::unique_ptr<Agent> make_agent(std::string_view name, const EnvDescriptor& env, const AgentConfig& cfg) {
  if (name == "sarsa_lambda") return std::make_unique<SarsaLambdaAgent>(env, cfg);
  if (name == "q_learning") return std::make_unique<QLearningAgent>(env, cfg);
  if (name == "mb_vi") return std::make_unique<ModelBasedAgent>(env, cfg, Planning::FullValueIteration);
  if (name == "mb_su") return std::make_unique<ModelBasedAgent>(env, cfg, Planning::SingleUpdate);
  if (name == "nstep_model") return std::make_unique<NStepModelAgent>(env, cfg);
  if (name == "sarsa_lambda_tc") {
    if (env.tabular()) throw Error(Errc::InvalidArgument, "sarsa_lambda_tc needs a continuous environment");
    return std::make_unique<LinearSarsaAgent>(env, cfg, mountain_car_tiles());
  }
  throw Error(Errc::ValidationError, "unknown agent '" + std::string(name) + "'");
}

}  // namespace loca
