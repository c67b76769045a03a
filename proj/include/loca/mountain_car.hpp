#pragma once

#include <memory>

#include "loca/mdp.hpp"

namespace loca {

struct MountainCarSpec {
  double position_min = -1.2;
  double position_max = 0.5;
  double velocity_min = -0.07;
  double velocity_max = 0.07;
  /// Above this position every action pushes right.
  double forced_zone = 0.4;
  double t2_position = -0.52;
  double t2_radius = 0.07;
  double reward_t1_task_a = 4.0;
  double reward_t1_task_b = 1.0;
  double reward_t2 = 2.0;
  /// Probability of drawing a FullTrain start from the whole space rather than the box around T2.
  double full_space_probability = 0.5;
  double gamma = 0.99;
};

enum CarAction : Action { kPushLeft = 0, kNoOp = 1, kPushRight = 2 };

struct CarState {
  double position = 0.0;
  double velocity = 0.0;
};

/// Classic dynamics with clamping; velocity is zeroed when the car hits the left wall.
CarState mc_dynamics(const MountainCarSpec& spec, CarState s, Action effective);

/// Strict membership test for the T2 ellipse around the valley floor.
bool mc_t2_contains(const MountainCarSpec& spec, double position, double velocity);

class MountainCar final : public Environment {
 public:
  explicit MountainCar(TaskLabel task, MountainCarSpec spec = {});

  const EnvDescriptor& descriptor() const override { return desc_; }
  StateRef reset(InitSpec init, Rng& rng) override;
  StepOutcome step(const StateRef& s, Action a, Rng& rng) override;
  std::unique_ptr<Environment> clone() const override { return std::make_unique<MountainCar>(*this); }

  const MountainCarSpec& spec() const { return spec_; }
  StepOutcome transition(CarState s, Action a) const;

 private:
  MountainCarSpec spec_;
  EnvDescriptor desc_;
};

std::unique_ptr<Environment> mountaincar_new(TaskLabel task, MountainCarSpec spec = {});

}  // namespace loca
