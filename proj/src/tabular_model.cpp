#include "loca/tabular_model.hpp"

#include "loca/error.hpp"
#include "loca/rng.hpp"

namespace loca {

TabularModel::TabularModel(std::size_t states, std::size_t actions, Init init, double initial_reward)
    : states_(states), actions_(actions), rows_(states * actions), rewards_(states * actions, 0.0) {
  if (states == 0 || actions == 0) throw Error(Errc::InvalidArgument, "empty model");
  if (init == Init::OptimisticTerminal) {
    const auto t1 = static_cast<std::uint32_t>(terminal_outcome(TerminalTag::T1));
    for (auto& row : rows_) row.push_back({t1, 1.0});
    std::fill(rewards_.begin(), rewards_.end(), initial_reward);
  }
}

double TabularModel::probability(std::size_t s, Action a, std::size_t outcome) const {
  for (const auto& e : row(s, a))
    if (e.outcome == outcome) return e.probability;
  return 0.0;
}

double TabularModel::row_sum(std::size_t s, Action a) const {
  double sum = 0.0;
  for (const auto& e : row(s, a)) sum += e.probability;
  return sum;
}

void TabularModel::ema_update(std::size_t s, Action a, double reward, std::size_t outcome, double alpha) {
  if (s >= states_ || a >= actions_) throw Error(Errc::InvalidArgument, "model index out of range");
  if (outcome >= outcome_count()) throw Error(Errc::InvalidArgument, "outcome out of range");
  auto& row = rows_[s * actions_ + a];
  const double keep = 1.0 - alpha;
  bool found = false;
  for (auto& e : row) {
    e.probability *= keep;
    if (e.outcome == outcome) {
      e.probability += alpha;
      found = true;
    }
  }
  if (!found) row.push_back({static_cast<std::uint32_t>(outcome), alpha});
  auto& r = rewards_[s * actions_ + a];
  r = keep * r + alpha * reward;
}

std::uint64_t TabularModel::hash(std::uint64_t h) const {
  for (const auto& row : rows_) {
    const std::size_t n = row.size();
    h = fnv1a(&n, sizeof n, h);
    for (const auto& e : row) {
      h = fnv1a(&e.outcome, sizeof e.outcome, h);
      h = fnv1a(&e.probability, sizeof e.probability, h);
    }
  }
  return fnv1a(rewards_.data(), rewards_.size() * sizeof(double), h);
}

std::size_t outcome_index(const TabularModel& model, const StepOutcome& out) {
  if (out.terminal) return model.terminal_outcome(*out.terminal);
  return tabular_index(out.next);
}

}  // namespace loca
