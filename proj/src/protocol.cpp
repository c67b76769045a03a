#include "loca/protocol.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "loca/error.hpp"

namespace loca {

double evaluate(const Agent& agent, const Environment& env, const EvalConfig& cfg, Rng& rng) {
  if (cfg.episodes == 0 || cfg.deadline == 0) throw Error(Errc::InvalidArgument, "evaluation needs episodes and a deadline");
  auto eval_env = env.clone();
  eval_env->reseed_noise(rng.next_u64());
  std::size_t reached_t2 = 0;
  for (std::size_t e = 0; e < cfg.episodes; ++e) {
    StateRef s = eval_env->reset(InitSpec::EvalMid, rng);
    for (std::size_t t = 0; t < cfg.deadline; ++t) {
      const Action a = agent.policy(s, 0.0, rng);
      StepOutcome out = eval_env->step(s, a, rng);
      if (out.terminal) {
        if (*out.terminal == TerminalTag::T2) ++reached_t2;
        break;
      }
      s = out.next;
    }
  }
  return static_cast<double>(reached_t2) / static_cast<double>(cfg.episodes);
}

std::optional<EvalCurve> run_phase(Agent& agent, Environment& env, const PhaseSpec& phase,
                                   const EpsSchedule& epsilon, const EvalConfig* eval, Rng& rng, Rng* eval_rng) {
  if (phase.steps == 0) throw Error(Errc::InvalidArgument, "phase needs a positive step budget");
  if (phase.episode_cap == 0) throw Error(Errc::InvalidArgument, "phase needs a positive episode cap");
  std::optional<Rng> own_eval_rng;
  std::optional<EvalCurve> curve;
  if (eval) {
    if (eval->delta_train == 0) throw Error(Errc::InvalidArgument, "delta_train must be positive");
    if (!eval_rng) eval_rng = &own_eval_rng.emplace(rng.substream("eval"));
    curve.emplace();
    curve->horizon = phase.steps;
  }

  StateRef s;
  bool in_episode = false;
  std::size_t episode_length = 0;
  for (std::size_t step = 0; step < phase.steps; ++step) {
    if (eval && step % eval->delta_train == 0)
      curve->points.push_back({step, evaluate(agent, env, *eval, *eval_rng)});

    if (!in_episode) {
      s = env.reset(phase.init, rng);
      episode_length = 0;
      in_episode = true;
      if (phase.learning) agent.begin_episode();
    }

    const double eps = eps_at(epsilon, phase.stage, step);
    Action a;
    if (phase.learning) {
      agent.set_epsilon(eps);
      a = agent.act(s, rng);
    } else {
      a = agent.policy(s, eps, rng);
    }
    StepOutcome out = env.step(s, a, rng);
    ++episode_length;
    if (phase.learning) agent.learn({s, a, out.reward, out.next, out.terminal}, rng);

    if (out.terminal) {
      if (phase.learning) agent.end_episode(EpisodeEnd::Terminal);
      in_episode = false;
    } else if (episode_length >= phase.episode_cap) {
      if (phase.learning) agent.end_episode(EpisodeEnd::Truncated);
      in_episode = false;
    } else {
      s = out.next;
    }
  }
  if (in_episode && phase.learning) agent.end_episode(EpisodeEnd::Truncated);
  return curve;
}

LocaSchedule make_loca_schedule(std::size_t phase1, std::size_t phase2, std::size_t phase3, std::size_t episode_cap) {
  return {{
      {TaskLabel::A, InitSpec::FullTrain, phase1, true, episode_cap, Stage::Phase1},
      {TaskLabel::B, InitSpec::LocalT1, phase2, true, episode_cap, Stage::Phase2},
      {TaskLabel::B, InitSpec::FullTrain, phase3, true, episode_cap, Stage::Phase3},
  }};
}

void validate_loca_schedule(const LocaSchedule& schedule) {
  const auto& [p1, p2, p3] = schedule;
  if (p1.task != TaskLabel::A || p1.init != InitSpec::FullTrain)
    throw Error(Errc::InvalidArgument, "phase 1 must train on task A from FullTrain");
  if (p2.task != TaskLabel::B || p2.init != InitSpec::LocalT1)
    throw Error(Errc::InvalidArgument, "phase 2 must train on task B from LocalT1");
  if (p3.task != TaskLabel::B || p3.init != InitSpec::FullTrain)
    throw Error(Errc::InvalidArgument, "phase 3 must train on task B from FullTrain");
}

namespace {

class EnvCache {
 public:
  EnvCache(const EnvFactory& make_env, const Rng& rng) : make_env_(make_env), rng_(rng) {}

  Environment& get(TaskLabel task) {
    auto it = envs_.find(task);
    if (it == envs_.end())
      it = envs_.emplace(task, make_env_(task, rng_.substream("env-noise-" + to_string(task)))).first;
    return *it->second;
  }

 private:
  const EnvFactory& make_env_;
  Rng rng_;
  std::map<TaskLabel, std::unique_ptr<Environment>> envs_;
};

}  // namespace

EvalCurve run_loca(const AgentFactory& make_agent, const EnvFactory& make_env, const LocaSchedule& schedule,
                   const EpsSchedule& epsilon, const EvalConfig& eval, const Rng& rng) {
  validate_loca_schedule(schedule);
  Rng train = rng.substream("train");
  Rng eval_rng = rng.substream("eval");
  EnvCache envs(make_env, rng);
  auto agent = make_agent(envs.get(schedule[0].task).descriptor());
  run_phase(*agent, envs.get(schedule[0].task), schedule[0], epsilon, nullptr, train);
  run_phase(*agent, envs.get(schedule[1].task), schedule[1], epsilon, nullptr, train);
  return *run_phase(*agent, envs.get(schedule[2].task), schedule[2], epsilon, &eval, train, &eval_rng);
}

EvalCurve run_default(const AgentFactory& make_agent, const EnvFactory& make_env, DefaultMode mode,
                      std::size_t pretrain_steps, const PhaseSpec& phase3, const EpsSchedule& epsilon,
                      const EvalConfig& eval, const Rng& rng) {
  Rng train = rng.substream("train");
  Rng eval_rng = rng.substream("eval");
  EnvCache envs(make_env, rng);
  auto agent = make_agent(envs.get(phase3.task).descriptor());
  if (mode == DefaultMode::ShuffledPretrain) {
    const PhaseSpec pretrain{TaskLabel::ShuffledA, InitSpec::FullTrain, pretrain_steps, true, phase3.episode_cap,
                             Stage::Phase1};
    run_phase(*agent, envs.get(TaskLabel::ShuffledA), pretrain, epsilon, nullptr, train);
  }
  return *run_phase(*agent, envs.get(phase3.task), phase3, epsilon, &eval, train, &eval_rng);
}

double regret(const EvalCurve& curve, std::size_t delta_train) {
  if (curve.points.empty()) throw Error(Errc::EmptyCurve, "no evaluation points");
  double total = 0.0;
  for (const auto& p : curve.points) {
    if (curve.horizon != 0 && p.train_step >= curve.horizon) break;
    total += (1.0 - p.fraction) * static_cast<double>(delta_train);
  }
  return total;
}

Gains gains(double default_regret, double loca_regret, double baseline_default, double baseline_loca) {
  if (default_regret < 0.0 || loca_regret < 0.0 || baseline_default < 0.0 || baseline_loca < 0.0)
    throw Error(Errc::InvalidArgument, "regrets must be non-negative");
  constexpr double inf = std::numeric_limits<double>::infinity();
  const double baseline_gain = baseline_loca == 0.0 ? inf : baseline_default / baseline_loca;
  if (baseline_gain == 0.0 || std::isinf(baseline_gain))
    throw Error(Errc::UndefinedBaseline, "baseline gain is " + std::to_string(baseline_gain));
  Gains g;
  g.gain = loca_regret == 0.0 ? inf : default_regret / loca_regret;
  g.relative_gain = g.gain / baseline_gain;
  return g;
}

}  // namespace loca
