#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>

#include "loca/rng.hpp"

namespace loca {

using Action = std::size_t;

/// T1 is the terminal whose reward changes between the tasks, T2 keeps its reward.
enum class TerminalTag : std::uint8_t { T1 = 0, T2 = 1 };

struct TabularIndex {
  std::size_t index = 0;
  friend bool operator==(const TabularIndex&, const TabularIndex&) = default;
};

struct ContinuousPoint {
  double position = 0.0;
  double velocity = 0.0;
  friend bool operator==(const ContinuousPoint&, const ContinuousPoint&) = default;
};

using StateRef = std::variant<TabularIndex, ContinuousPoint>;

/// When `terminal` is set the episode is over; for tabular environments
/// `next` then holds the reserved absorbing index stateCount + tag.
struct StepOutcome {
  StateRef next;
  double reward = 0.0;
  std::optional<TerminalTag> terminal;
};

enum class InitSpec { FullTrain, LocalT1, EvalMid };
enum class TaskLabel { A, B, ShuffledA };

std::string to_string(InitSpec init);
std::string to_string(TaskLabel task);

struct EnvDescriptor {
  std::string name;
  std::size_t action_count = 0;
  /// Zero for continuous environments.
  std::size_t state_count = 0;
  TaskLabel task = TaskLabel::A;
  double gamma = 0.0;

  bool tabular() const { return state_count > 0; }
  /// Index of the absorbing representation of a terminal (tabular only).
  std::size_t terminal_index(TerminalTag tag) const { return state_count + static_cast<std::size_t>(tag); }
};

/// Episodic environment. Implementations are immutable after construction
/// except for the position of any private noise stream; all other randomness
/// comes from the caller's stream.
class Environment {
 public:
  virtual ~Environment() = default;

  virtual const EnvDescriptor& descriptor() const = 0;
  virtual StateRef reset(InitSpec init, Rng& rng) = 0;
  virtual StepOutcome step(const StateRef& s, Action a, Rng& rng) = 0;
  virtual std::unique_ptr<Environment> clone() const = 0;

  /// Re-seeds wrapper-private noise; a no-op for plain environments.
  virtual void reseed_noise(std::uint64_t /*seed*/) {}
};

/// Index of a tabular state; throws NotTabular for continuous states.
std::size_t tabular_index(const StateRef& s);
/// Throws OutOfBounds for tabular states.
ContinuousPoint continuous_point(const StateRef& s);

/// Convenience forwarding to Environment::reset / step.
inline StateRef env_reset(Environment& env, InitSpec init, Rng& rng) { return env.reset(init, rng); }
inline StepOutcome env_step(Environment& env, const StateRef& s, Action a, Rng& rng) { return env.step(s, a, rng); }

}  // namespace loca
