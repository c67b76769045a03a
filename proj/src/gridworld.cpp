#include "loca/gridworld.hpp"

#include <string>

#include "loca/error.hpp"

namespace loca {

Gridworld::Gridworld(TaskLabel task, GridSpec spec) : spec_(spec) {
  if (spec_.width < 2 || spec_.height < 1) throw Error(Errc::InvalidArgument, "grid too small");
  if (task == TaskLabel::ShuffledA) throw Error(Errc::InvalidArgument, "wrap task A with an action shuffle instead");
  desc_.name = "gridworld";
  desc_.action_count = 4;
  desc_.state_count = static_cast<std::size_t>(spec_.width * spec_.height);
  desc_.task = task;
  desc_.gamma = spec_.gamma;
}

Cell Gridworld::cell_of(std::size_t index) const {
  const int i = static_cast<int>(index);
  return {i % spec_.width, i / spec_.width};
}

StateRef Gridworld::reset(InitSpec init, Rng& rng) {
  const auto rows = static_cast<std::uint64_t>(spec_.height);
  switch (init) {
    case InitSpec::FullTrain:
      return TabularIndex{rng.below(desc_.state_count)};
    case InitSpec::LocalT1:
      return TabularIndex{index_of({spec_.width - 1, static_cast<int>(rng.below(rows))})};
    case InitSpec::EvalMid:
      return TabularIndex{index_of({spec_.eval_column, static_cast<int>(rng.below(rows))})};
  }
  throw Error(Errc::UnsupportedInit, to_string(init));
}

StepOutcome Gridworld::transition(Cell c, Action a) const {
  const int last = spec_.width - 1;
  Cell n = c;
  switch (a) {
    case kUp:
      if (c.y + 1 < spec_.height) ++n.y;
      break;
    case kDown:
      if (c.y > 0) --n.y;
      break;
    case kLeft:
      if (c.x == 0) return {TabularIndex{desc_.terminal_index(TerminalTag::T2)}, spec_.reward_t2, TerminalTag::T2};
      if (c.x != last) --n.x;  // one-way passage
      break;
    case kRight:
      if (c.x == last) {
        const double r = desc_.task == TaskLabel::A ? spec_.reward_t1_task_a : spec_.reward_t1_task_b;
        return {TabularIndex{desc_.terminal_index(TerminalTag::T1)}, r, TerminalTag::T1};
      }
      ++n.x;
      break;
    default:
      throw Error(Errc::InvalidAction, "gridworld action " + std::to_string(a));
  }
  return {TabularIndex{index_of(n)}, 0.0, std::nullopt};
}

StepOutcome Gridworld::step(const StateRef& s, Action a, Rng& /*rng*/) {
  const std::size_t i = tabular_index(s);
  if (i >= desc_.state_count) throw Error(Errc::SteppedTerminal, "stepped from an absorbing state");
  if (a >= desc_.action_count) throw Error(Errc::InvalidAction, "gridworld action " + std::to_string(a));
  return transition(cell_of(i), a);
}

std::unique_ptr<Environment> gridworld_new(TaskLabel task, GridSpec spec) {
  return std::make_unique<Gridworld>(task, spec);
}

}  // namespace loca
