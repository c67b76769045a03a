#include "loca/mountain_car.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "loca/error.hpp"

namespace loca {

CarState mc_dynamics(const MountainCarSpec& spec, CarState s, Action effective) {
  double v = s.velocity + 0.001 * (static_cast<double>(effective) - 1.0) - 0.0025 * std::cos(3.0 * s.position);
  v = std::clamp(v, spec.velocity_min, spec.velocity_max);
  double x = std::clamp(s.position + v, spec.position_min, spec.position_max);
  if (x == spec.position_min && v < 0.0) v = 0.0;
  return {x, v};
}

bool mc_t2_contains(const MountainCarSpec& spec, double position, double velocity) {
  const double dx = position - spec.t2_position;
  const double dv = 10.0 * velocity;
  return dx * dx + dv * dv < spec.t2_radius * spec.t2_radius;
}

MountainCar::MountainCar(TaskLabel task, MountainCarSpec spec) : spec_(spec) {
  if (task == TaskLabel::ShuffledA) throw Error(Errc::InvalidArgument, "wrap task A with an action shuffle instead");
  desc_.name = "mountaincar";
  desc_.action_count = 3;
  desc_.state_count = 0;
  desc_.task = task;
  desc_.gamma = spec_.gamma;
}

StateRef MountainCar::reset(InitSpec init, Rng& rng) {
  switch (init) {
    case InitSpec::FullTrain: {
      // Starts inside T2 would end before the first step; redraw them.
      for (;;) {
        ContinuousPoint p;
        if (rng.bernoulli(spec_.full_space_probability)) {
          p.position = rng.uniform(spec_.position_min, spec_.position_max);
          p.velocity = rng.uniform(spec_.velocity_min, spec_.velocity_max);
        } else {
          p.position = rng.uniform(-1.0, 0.0);
          p.velocity = rng.uniform(-0.03, 0.03);
        }
        if (!mc_t2_contains(spec_, p.position, p.velocity)) return p;
      }
    }
    case InitSpec::LocalT1: {
      const double x = rng.uniform(spec_.forced_zone, spec_.position_max);
      const double v = rng.uniform(0.0, spec_.velocity_max);
      return ContinuousPoint{x, v};
    }
    case InitSpec::EvalMid: {
      const double x = rng.uniform(-0.2, -0.15);
      const double v = rng.uniform(-0.005, 0.005);
      return ContinuousPoint{x, v};
    }
  }
  throw Error(Errc::UnsupportedInit, to_string(init));
}

StepOutcome MountainCar::transition(CarState s, Action a) const {
  if (a >= desc_.action_count) throw Error(Errc::InvalidAction, "mountain car action " + std::to_string(a));
  const Action effective = s.position > spec_.forced_zone ? kPushRight : a;
  const CarState n = mc_dynamics(spec_, s, effective);
  const ContinuousPoint next{n.position, n.velocity};
  if (n.position >= spec_.position_max) {
    const double r = desc_.task == TaskLabel::A ? spec_.reward_t1_task_a : spec_.reward_t1_task_b;
    return {next, r, TerminalTag::T1};
  }
  if (mc_t2_contains(spec_, n.position, n.velocity)) return {next, spec_.reward_t2, TerminalTag::T2};
  return {next, 0.0, std::nullopt};
}

StepOutcome MountainCar::step(const StateRef& s, Action a, Rng& /*rng*/) {
  const ContinuousPoint p = continuous_point(s);
  if (p.position >= spec_.position_max || mc_t2_contains(spec_, p.position, p.velocity))
    throw Error(Errc::SteppedTerminal, "stepped from a terminal state");
  return transition({p.position, p.velocity}, a);
}

std::unique_ptr<Environment> mountaincar_new(TaskLabel task, MountainCarSpec spec) {
  return std::make_unique<MountainCar>(task, spec);
}

}  // namespace loca
