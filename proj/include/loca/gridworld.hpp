#pragma once

#include <memory>

#include "loca/mdp.hpp"

namespace loca {

/// Layout and reward constants of the two-terminal gridworld.
///
/// Columns run 0..width-1 from T2 (left) to T1 (right), rows 0..height-1 from
/// bottom to top. Right from the last column enters T1, Left from column 0
/// enters T2. Left is a no-op in the last column, so once the agent crosses
/// from the passage column it can only move vertically or finish in T1.
struct GridSpec {
  int width = 25;
  int height = 4;
  int passage_column = 23;
  double gamma = 0.97;
  double reward_t1_task_a = 4.0;
  double reward_t1_task_b = 1.0;
  double reward_t2 = 2.0;
  int eval_column = 12;
};

enum GridAction : Action { kUp = 0, kDown = 1, kLeft = 2, kRight = 3 };

struct Cell {
  int x = 0;
  int y = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
};

class Gridworld final : public Environment {
 public:
  explicit Gridworld(TaskLabel task, GridSpec spec = {});

  const EnvDescriptor& descriptor() const override { return desc_; }
  StateRef reset(InitSpec init, Rng& rng) override;
  StepOutcome step(const StateRef& s, Action a, Rng& rng) override;
  std::unique_ptr<Environment> clone() const override { return std::make_unique<Gridworld>(*this); }

  const GridSpec& spec() const { return spec_; }
  std::size_t index_of(Cell c) const { return static_cast<std::size_t>(c.y * spec_.width + c.x); }
  Cell cell_of(std::size_t index) const;

  /// Deterministic transition of the grid, independent of any stream.
  StepOutcome transition(Cell c, Action a) const;

 private:
  GridSpec spec_;
  EnvDescriptor desc_;
};

std::unique_ptr<Environment> gridworld_new(TaskLabel task, GridSpec spec = {});

}  // namespace loca
