#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "loca/agent.hpp"
#include "loca/eps_schedule.hpp"
#include "loca/mdp.hpp"
#include "loca/rng.hpp"

namespace loca {

struct PhaseSpec {
  TaskLabel task = TaskLabel::A;
  InitSpec init = InitSpec::FullTrain;
  std::size_t steps = 0;
  bool learning = true;
  std::size_t episode_cap = 100;
  Stage stage = Stage::Phase1;
};

struct EvalConfig {
  std::size_t delta_train = 100;
  std::size_t episodes = 10;
  std::size_t deadline = 40;
};

struct EvalPoint {
  /// Phase-3 training steps completed before this evaluation.
  std::size_t train_step = 0;
  double fraction = 0.0;
  friend bool operator==(const EvalPoint&, const EvalPoint&) = default;
};

struct EvalCurve {
  std::vector<EvalPoint> points;
  std::size_t horizon = 0;
  friend bool operator==(const EvalCurve&, const EvalCurve&) = default;
};

/// Builds the environment for a task; `noise` seeds any wrapper-private stream.
using EnvFactory = std::function<std::unique_ptr<Environment>(TaskLabel task, Rng noise)>;
using AgentFactory = std::function<std::unique_ptr<Agent>(const EnvDescriptor& env)>;

/// Fraction of greedy episodes from EvalMid that reach T2 within the deadline.
/// Runs on a clone of `env` whose noise is reseeded from `rng`; the agent is
/// only queried through its const policy.
double evaluate(const Agent& agent, const Environment& env, const EvalConfig& cfg, Rng& rng);

/// Interacts for phase.steps environment steps, resetting on a terminal or
/// when the episode cap is hit. With `eval` set, an evaluation is run before
/// training steps 0, delta, 2 delta, ...; the current training episode is
/// suspended, not reset. Episode hooks only fire when learning is enabled.
std::optional<EvalCurve> run_phase(Agent& agent, Environment& env, const PhaseSpec& phase,
                                   const EpsSchedule& epsilon, const EvalConfig* eval, Rng& rng,
                                   Rng* eval_rng = nullptr);

/// Three-phase schedule: (A, FullTrain), (B, LocalT1), (B, FullTrain).
using LocaSchedule = std::array<PhaseSpec, 3>;

LocaSchedule make_loca_schedule(std::size_t phase1, std::size_t phase2, std::size_t phase3, std::size_t episode_cap);

/// Throws InvalidArgument if the schedule does not have the LoCA shape.
void validate_loca_schedule(const LocaSchedule& schedule);

EvalCurve run_loca(const AgentFactory& make_agent, const EnvFactory& make_env, const LocaSchedule& schedule,
                   const EpsSchedule& epsilon, const EvalConfig& eval, const Rng& rng);

enum class DefaultMode {
  /// Phase 3 only, from the agent's initialization.
  Fresh,
  /// Pretrain for `pretrain_steps` on the action-shuffled task A, then phase 3.
  ShuffledPretrain,
};

EvalCurve run_default(const AgentFactory& make_agent, const EnvFactory& make_env, DefaultMode mode,
                      std::size_t pretrain_steps, const PhaseSpec& phase3, const EpsSchedule& epsilon,
                      const EvalConfig& eval, const Rng& rng);

/// Finite-horizon regret: sum_i (1 - f_i) * delta_train over the points with
/// train_step < horizon. Throws EmptyCurve.
double regret(const EvalCurve& curve, std::size_t delta_train);

struct Gains {
  double gain = 0.0;
  double relative_gain = 0.0;
};

/// gain = default / loca (infinite when loca is 0); relative gain divides by
/// the baseline's gain. Throws UndefinedBaseline when the baseline gain is 0
/// or infinite.
Gains gains(double default_regret, double loca_regret, double baseline_default, double baseline_loca);

struct RegretReport {
  double default_regret = 0.0;
  double loca_regret = 0.0;
  double gain = 0.0;
  std::optional<double> relative_gain;
};

}  // namespace loca
