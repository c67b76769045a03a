#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "loca/agent.hpp"
#include "loca/environments.hpp"
#include "loca/error.hpp"
#include "loca/gridworld.hpp"
#include "loca/policy.hpp"
#include "loca/protocol.hpp"
#include "loca/tabular_agents.hpp"
#include "loca/value_iteration.hpp"

namespace loca {
namespace {

// Greedy agent planning on the exact model of one gridworld task; never learns.
class OracleAgent final : public Agent {
 public:
  explicit OracleAgent(TaskLabel task) : model_(100, 4, TabularModel::Init::Zero) {
    const Gridworld g(task);
    for (std::size_t s = 0; s < 100; ++s) {
      for (Action a = 0; a < 4; ++a) {
        const auto o = g.transition(g.cell_of(s), a);
        model_.ema_update(s, a, o.reward, outcome_index(model_, o), 1.0);
      }
    }
    values_ = value_iteration(model_, 0.97, 1e-12, 10000).values;
  }
  std::string_view name() const override { return "oracle"; }
  void begin_episode() override { ++episodes; }
  Action act(const StateRef& s, Rng& rng) override { return policy(s, 0.0, rng); }
  void learn(const Transition& t, Rng&) override {
    ++steps;
    if (t.terminal) terminals.push_back(*t.terminal);
  }
  void end_episode(EpisodeEnd end) override { ends.push_back(end); }
  Action policy(const StateRef& s, double epsilon, Rng& rng) const override {
    return eps_greedy_action(q_from_model(model_, values_, tabular_index(s), 0.97), epsilon, rng);
  }
  void set_epsilon(double) override {}
  double epsilon() const override { return 0.0; }
  std::uint64_t content_hash() const override { return 0; }

  int episodes = 0;
  int steps = 0;
  std::vector<TerminalTag> terminals;
  std::vector<EpisodeEnd> ends;

 private:
  TabularModel model_;
  ValueTable values_;
};

class RandomAgent final : public Agent {
 public:
  std::string_view name() const override { return "random"; }
  void begin_episode() override {}
  Action act(const StateRef& s, Rng& rng) override { return policy(s, 1.0, rng); }
  void learn(const Transition&, Rng&) override {}
  void end_episode(EpisodeEnd) override {}
  Action policy(const StateRef&, double, Rng& rng) const override { return rng.below(4); }
  void set_epsilon(double) override {}
  double epsilon() const override { return 1.0; }
  std::uint64_t content_hash() const override { return 0; }
};

EvalCurve curve_of(std::vector<double> fractions, std::size_t delta, std::size_t horizon = 0) {
  EvalCurve c;
  for (std::size_t i = 0; i < fractions.size(); ++i) c.points.push_back({i * delta, fractions[i]});
  c.horizon = horizon == 0 ? fractions.size() * delta : horizon;
  return c;
}

TEST(Regret, HandExamples) {
  EXPECT_EQ(regret(curve_of({1, 1, 1, 1}, 100), 100), 0.0);
  EXPECT_EQ(regret(curve_of({0, 0, 1, 1, 1}, 100), 100), 200.0);
  EXPECT_EQ(regret(curve_of(std::vector<double>(40, 0.0), 1000), 1000), 40000.0);
  EXPECT_NEAR(regret(curve_of({0.5, 0.9, 1.0}, 100), 100), 60.0, 1e-12);
}

TEST(Regret, HorizonCutsOffLatePoints) {
  EXPECT_EQ(regret(curve_of({0, 0, 0, 0}, 100, 200), 100), 200.0);
}

TEST(Regret, EmptyCurveThrows) {
  try {
    regret(EvalCurve{}, 100);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::EmptyCurve);
  }
}

TEST(Regret, MonotoneAndBounded) {
  Rng rng(0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.below(50);
    std::vector<double> low(n), high(n);
    for (std::size_t i = 0; i < n; ++i) {
      low[i] = static_cast<double>(rng.below(11)) / 10.0;
      high[i] = std::min(1.0, low[i] + static_cast<double>(rng.below(3)) / 10.0);
    }
    const double r_low = regret(curve_of(low, 100), 100);
    const double r_high = regret(curve_of(high, 100), 100);
    EXPECT_LE(r_high, r_low + 1e-9);
    EXPECT_EQ(r_high == r_low, high == low);
    EXPECT_GE(r_high, 0.0);
    EXPECT_LE(r_low, static_cast<double>(n * 100));
  }
}

TEST(Gains, TableExamples) {
  EXPECT_DOUBLE_EQ(gains(68.25, 39.52, 68.25, 39.52).relative_gain, 1.0);
  EXPECT_NEAR(gains(30.09, 14.92, 68.25, 39.52).relative_gain, 1.17, 0.005);
  const Gains vi = gains(7.5, 0.0, 68.25, 39.52);
  EXPECT_TRUE(std::isinf(vi.gain));
  EXPECT_TRUE(std::isinf(vi.relative_gain));
  EXPECT_NEAR(gains(84.83, 1.87, 68.25, 39.52).relative_gain, 26.27, 0.01);
}

TEST(Gains, UndefinedBaseline) {
  for (auto [d, l] : {std::pair{0.0, 5.0}, std::pair{5.0, 0.0}}) {
    try {
      gains(10.0, 5.0, d, l);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::UndefinedBaseline);
    }
  }
  EXPECT_THROW(gains(-1.0, 1.0, 1.0, 1.0), Error);
}

TEST(Evaluate, OracleAgentsSeparateTheTasks) {
  const Gridworld task_b(TaskLabel::B);
  const EvalConfig cfg{100, 10, 40};
  Rng rng(1);
  EXPECT_EQ(evaluate(OracleAgent(TaskLabel::B), task_b, cfg, rng), 1.0);
  EXPECT_EQ(evaluate(OracleAgent(TaskLabel::A), task_b, cfg, rng), 0.0);
}

TEST(Evaluate, DeadlineIsEnforced) {
  // Thirteen steps are needed from the evaluation column.
  const Gridworld task_b(TaskLabel::B);
  Rng rng(2);
  EXPECT_EQ(evaluate(OracleAgent(TaskLabel::B), task_b, {100, 10, 12}, rng), 0.0);
  EXPECT_EQ(evaluate(OracleAgent(TaskLabel::B), task_b, {100, 10, 13}, rng), 1.0);
}

TEST(Evaluate, RandomAgentRarelyReachesT2) {
  const Gridworld task_b(TaskLabel::B);
  Rng rng(3);
  const double f = evaluate(RandomAgent(), task_b, {100, 10000, 40}, rng);
  EXPECT_LT(f, 0.02);
}

TEST(Evaluate, LeavesLearningAgentsUntouched) {
  const Gridworld a(TaskLabel::A), b(TaskLabel::B);
  for (const auto& name : registered_agents()) {
    if (name == "sarsa_lambda_tc") continue;
    auto agent = make_agent(name, a.descriptor(), default_agent_config(name));
    Gridworld env(TaskLabel::A);
    Rng rng(4);
    // Stop mid-episode so traces and buffers are non-trivial.
    const PhaseSpec phase{TaskLabel::A, InitSpec::FullTrain, 2537, true, 100, Stage::Phase1};
    run_phase(*agent, env, phase, EpsSchedule::constant(0.1), nullptr, rng);
    const std::uint64_t before = agent->content_hash();
    Rng eval_rng(5);
    evaluate(*agent, b, {100, 10, 40}, eval_rng);
    EXPECT_EQ(agent->content_hash(), before) << name;
  }
}

TEST(RunPhase, FrozenPhaseDoesNotLearn) {
  const Gridworld g(TaskLabel::B);
  auto agent = make_agent("sarsa_lambda", g.descriptor(), default_agent_config("sarsa_lambda"));
  Gridworld env(TaskLabel::B);
  Rng rng(6);
  const std::uint64_t before = agent->content_hash();
  const PhaseSpec phase{TaskLabel::B, InitSpec::FullTrain, 3000, false, 100, Stage::Phase3};
  run_phase(*agent, env, phase, EpsSchedule::constant(0.1), nullptr, rng);
  EXPECT_EQ(agent->content_hash(), before);
}

TEST(RunPhase, EvaluationScheduleArithmetic) {
  OracleAgent agent(TaskLabel::B);
  Gridworld env(TaskLabel::B);
  Rng rng(7);
  const EvalConfig eval{100, 10, 40};
  const PhaseSpec phase{TaskLabel::B, InitSpec::FullTrain, 100 * 7, true, 100, Stage::Phase3};
  const auto curve = run_phase(agent, env, phase, EpsSchedule::constant(0.1), &eval, rng);
  ASSERT_TRUE(curve);
  ASSERT_EQ(curve->points.size(), 7u);
  for (std::size_t i = 0; i < 7; ++i) {
    EXPECT_EQ(curve->points[i].train_step, i * 100);
    EXPECT_EQ(curve->points[i].fraction, 1.0);
  }
  EXPECT_EQ(curve->horizon, 700u);
  EXPECT_EQ(agent.steps, 700);
}

TEST(RunPhase, LocalPhaseEndsInT1) {
  OracleAgent agent(TaskLabel::A);
  Gridworld env(TaskLabel::B);
  Rng rng(8);
  const PhaseSpec phase{TaskLabel::B, InitSpec::LocalT1, 5000, true, 100, Stage::Phase2};
  run_phase(agent, env, phase, EpsSchedule::constant(0.1), nullptr, rng);
  ASSERT_FALSE(agent.terminals.empty());
  for (auto t : agent.terminals) EXPECT_EQ(t, TerminalTag::T1);
}

TEST(RunPhase, CapResetsFireEpisodeHooks) {
  // The task-A oracle walks right; from column 0 it needs 25 steps, so a cap
  // of 5 truncates every episode that starts left of column 20.
  OracleAgent agent(TaskLabel::A);
  Gridworld env(TaskLabel::A);
  Rng rng(9);
  const PhaseSpec phase{TaskLabel::A, InitSpec::FullTrain, 1000, true, 5, Stage::Phase1};
  run_phase(agent, env, phase, EpsSchedule::constant(0.0), nullptr, rng);
  EXPECT_EQ(static_cast<std::size_t>(agent.episodes), agent.ends.size());
  int truncated = 0;
  for (auto e : agent.ends) truncated += e == EpisodeEnd::Truncated;
  EXPECT_GT(truncated, 0);
  EXPECT_GE(agent.episodes, 200);
}

TEST(RunPhase, RejectsEmptyBudgets) {
  OracleAgent agent(TaskLabel::A);
  Gridworld env(TaskLabel::A);
  Rng rng(0);
  EXPECT_THROW(run_phase(agent, env, {TaskLabel::A, InitSpec::FullTrain, 0, true, 100, Stage::Phase1},
                         EpsSchedule::constant(0.1), nullptr, rng),
               Error);
}

TEST(LocaSchedule, ShapeIsValidated) {
  auto s = make_loca_schedule(100, 10, 50, 100);
  EXPECT_NO_THROW(validate_loca_schedule(s));
  EXPECT_EQ(s[1].init, InitSpec::LocalT1);
  EXPECT_EQ(s[2].task, TaskLabel::B);
  s[0].task = TaskLabel::B;
  EXPECT_THROW(validate_loca_schedule(s), Error);
}

EnvFactory gridworld_factory() {
  return [](TaskLabel task, Rng noise) { return make_environment("gridworld", task, 1, noise); };
}

TEST(RunLoca, FrozenOracleGivesAFlatCurve) {
  const AgentFactory oracle = [](const EnvDescriptor&) { return std::make_unique<OracleAgent>(TaskLabel::B); };
  const auto schedule = make_loca_schedule(500, 100, 1000, 100);
  const auto curve = run_loca(oracle, gridworld_factory(), schedule, EpsSchedule::constant(0.1), {100, 10, 40}, Rng(1));
  ASSERT_EQ(curve.points.size(), 10u);
  for (const auto& p : curve.points) EXPECT_EQ(p.fraction, 1.0);
  EXPECT_EQ(regret(curve, 100), 0.0);
}

TEST(RunLoca, SameSeedSameCurve) {
  const AgentFactory sarsa = [](const EnvDescriptor& d) {
    return make_agent("sarsa_lambda", d, default_agent_config("sarsa_lambda"));
  };
  const auto schedule = make_loca_schedule(3000, 500, 2000, 100);
  const EvalConfig eval{100, 10, 40};
  const auto a = run_loca(sarsa, gridworld_factory(), schedule, EpsSchedule::constant(0.1), eval, Rng(5));
  const auto b = run_loca(sarsa, gridworld_factory(), schedule, EpsSchedule::constant(0.1), eval, Rng(5));
  EXPECT_EQ(a, b);
  const auto d1 = run_default(sarsa, gridworld_factory(), DefaultMode::Fresh, 0, schedule[2],
                              EpsSchedule::constant(0.1), eval, Rng(5));
  const auto d2 = run_default(sarsa, gridworld_factory(), DefaultMode::Fresh, 0, schedule[2],
                              EpsSchedule::constant(0.1), eval, Rng(5));
  EXPECT_EQ(d1, d2);
  EXPECT_EQ(d1.points.size(), 20u);
}

TEST(RunDefault, ShuffledPretrainUsesTheRotatedTask) {
  std::vector<TaskLabel> built;
  const EnvFactory recording = [&built](TaskLabel task, Rng noise) {
    built.push_back(task);
    return make_environment("gridworld", task, 1, noise);
  };
  const AgentFactory oracle = [](const EnvDescriptor&) { return std::make_unique<OracleAgent>(TaskLabel::B); };
  const PhaseSpec phase3{TaskLabel::B, InitSpec::FullTrain, 500, true, 100, Stage::Phase3};
  run_default(oracle, recording, DefaultMode::ShuffledPretrain, 300, phase3, EpsSchedule::constant(0.1),
              {100, 10, 40}, Rng(2));
  EXPECT_EQ(built, (std::vector<TaskLabel>{TaskLabel::B, TaskLabel::ShuffledA}));
}

}  // namespace
}  // namespace loca
