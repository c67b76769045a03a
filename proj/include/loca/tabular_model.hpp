#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "loca/mdp.hpp"

namespace loca {

struct ModelEntry {
  std::uint32_t outcome = 0;
  double probability = 0.0;
};

/// Sparse estimate of p(z | s, a) over the non-terminal states plus the two
/// terminal outcomes, together with an expected reward per (s, a).
///
/// Rows only ever gain entries. With the optimistic initialization every row
/// starts as a point mass on T1 with reward 4; with the zero initialization
/// rows are empty and sum to 0.
class TabularModel {
 public:
  enum class Init { OptimisticTerminal, Zero };

  TabularModel(std::size_t states, std::size_t actions, Init init, double initial_reward = 4.0);

  std::size_t state_count() const { return states_; }
  std::size_t action_count() const { return actions_; }
  std::size_t outcome_count() const { return states_ + 2; }
  std::size_t terminal_outcome(TerminalTag tag) const { return states_ + static_cast<std::size_t>(tag); }

  std::span<const ModelEntry> row(std::size_t s, Action a) const { return rows_[s * actions_ + a]; }
  double reward(std::size_t s, Action a) const { return rewards_[s * actions_ + a]; }
  double probability(std::size_t s, Action a, std::size_t outcome) const;
  double row_sum(std::size_t s, Action a) const;

  /// p(.|s,a) <- (1 - alpha) p(.|s,a) + alpha onehot(outcome); r(s,a) likewise.
  void ema_update(std::size_t s, Action a, double reward, std::size_t outcome, double alpha);

  std::uint64_t hash(std::uint64_t h) const;

 private:
  std::size_t states_;
  std::size_t actions_;
  std::vector<std::vector<ModelEntry>> rows_;
  std::vector<double> rewards_;
};

inline void model_ema_update(TabularModel& model, std::size_t s, Action a, double reward, std::size_t outcome,
                             double alpha) {
  model.ema_update(s, a, reward, outcome, alpha);
}

/// Index of a step's outcome in the model's outcome space.
std::size_t outcome_index(const TabularModel& model, const StepOutcome& out);

}  // namespace loca
