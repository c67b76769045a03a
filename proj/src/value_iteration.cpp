#include "loca/value_iteration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "loca/error.hpp"

namespace loca {

double action_value(const TabularModel& model, std::span<const double> v, std::size_t s, Action a, double discount) {
  const std::size_t states = model.state_count();
  double expected = 0.0;
  for (const auto& e : model.row(s, a))
    if (e.outcome < states) expected += e.probability * v[e.outcome];
  return model.reward(s, a) + discount * expected;
}

std::vector<double> q_from_model(const TabularModel& model, std::span<const double> v, std::size_t s, double gamma,
                                 int n) {
  const double discount = std::pow(gamma, n);
  std::vector<double> q(model.action_count());
  for (Action a = 0; a < q.size(); ++a) q[a] = action_value(model, v, s, a, discount);
  return q;
}

double greedy_backup(const TabularModel& model, std::span<const double> v, std::size_t s, double gamma) {
  double best = -std::numeric_limits<double>::infinity();
  for (Action a = 0; a < model.action_count(); ++a) best = std::max(best, action_value(model, v, s, a, gamma));
  return best;
}

double bellman_sweep_serial(const TabularModel& model, double gamma, std::span<const double> in,
                            std::span<double> out) {
  double delta = 0.0;
  for (std::size_t s = 0; s < model.state_count(); ++s) {
    out[s] = greedy_backup(model, in, s, gamma);
    delta = std::max(delta, std::abs(out[s] - in[s]));
  }
  return delta;
}

double bellman_sweep_parallel(const TabularModel& model, double gamma, std::span<const double> in,
                              std::span<double> out) {
  const auto states = static_cast<std::ptrdiff_t>(model.state_count());
  double delta = 0.0;
#pragma omp parallel for schedule(static) reduction(max : delta)
  for (std::ptrdiff_t s = 0; s < states; ++s) {
    const auto i = static_cast<std::size_t>(s);
    out[i] = greedy_backup(model, in, i, gamma);
    delta = std::max(delta, std::abs(out[i] - in[i]));
  }
  return delta;
}

ValueIterationResult value_iteration(const TabularModel& model, double gamma, double theta, int max_sweeps,
                                     ValueTable initial, Execution exec) {
  const std::size_t states = model.state_count();
  if (initial.empty()) initial.assign(states, 0.0);
  if (initial.size() != states) throw Error(Errc::InvalidArgument, "value table size mismatch");

  ValueIterationResult result;
  ValueTable next(states);
  result.values = std::move(initial);
  while (result.sweeps < max_sweeps) {
    const double delta = exec == Execution::Parallel ? bellman_sweep_parallel(model, gamma, result.values, next)
                                                     : bellman_sweep_serial(model, gamma, result.values, next);
    result.values.swap(next);
    ++result.sweeps;
    result.deltas.push_back(delta);
    if (delta < theta) {
      result.converged = true;
      break;
    }
  }
  return result;
}

IncrementalPlanner::IncrementalPlanner(const TabularModel& model, ValueTable initial, double cutoff)
    : values_(std::move(initial)),
      scratch_(model.state_count(), 0.0),
      held_(model.state_count(), 0.0),
      cutoff_(cutoff),
      packed_(model.state_count()),
      predecessors_(model.state_count()),
      known_row_size_(model.state_count() * model.action_count(), 0),
      dirty_flag_(model.state_count(), 0),
      next_flag_(model.state_count(), 0) {
  const std::size_t states = model.state_count();
  if (values_.empty()) values_.assign(states, 0.0);
  if (values_.size() != states) throw Error(Errc::InvalidArgument, "value table size mismatch");
  if (!(cutoff >= 0.0)) throw Error(Errc::InvalidArgument, "planner cutoff must be non-negative");
  for (std::size_t s = 0; s < states; ++s) {
    for (Action a = 0; a < model.action_count(); ++a) notify_row_changed(model, s, a);
  }
}

void IncrementalPlanner::notify_row_changed(const TabularModel& model, std::size_t s, Action a) {
  const auto row = model.row(s, a);
  auto& known = known_row_size_[s * model.action_count() + a];
  for (; known < row.size(); ++known) {
    const std::uint32_t z = row[known].outcome;
    if (z >= model.state_count()) continue;
    auto& preds = predecessors_[z];
    if (std::find(preds.begin(), preds.end(), static_cast<std::uint32_t>(s)) == preds.end())
      preds.push_back(static_cast<std::uint32_t>(s));
  }
  repack(model, s);
  if (!dirty_flag_[s]) {
    dirty_flag_[s] = 1;
    dirty_.push_back(static_cast<std::uint32_t>(s));
  }
}

void IncrementalPlanner::repack(const TabularModel& model, std::size_t s) {
  auto& rows = packed_[s];
  rows.outcome.clear();
  rows.probability.clear();
  rows.start.assign(1, 0);
  rows.reward.clear();
  for (Action a = 0; a < model.action_count(); ++a) {
    for (const auto& e : model.row(s, a)) {
      if (e.outcome >= model.state_count()) continue;
      rows.outcome.push_back(e.outcome);
      rows.probability.push_back(e.probability);
    }
    rows.start.push_back(static_cast<std::uint32_t>(rows.outcome.size()));
    rows.reward.push_back(model.reward(s, a));
  }
}

// Same arithmetic, in the same order, as greedy_backup on the model.
double IncrementalPlanner::backup(std::size_t s, double gamma) const {
  const auto& rows = packed_[s];
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < rows.reward.size(); ++a) {
    double expected = 0.0;
    for (std::uint32_t i = rows.start[a]; i < rows.start[a + 1]; ++i)
      expected += rows.probability[i] * values_[rows.outcome[i]];
    best = std::max(best, rows.reward[a] + gamma * expected);
  }
  return best;
}

void IncrementalPlanner::mark_predecessors(std::size_t state) {
  for (const std::uint32_t p : predecessors_[state]) {
    if (!next_flag_[p]) {
      next_flag_[p] = 1;
      next_.push_back(p);
    }
  }
}

int IncrementalPlanner::plan(const TabularModel& model, double gamma, double theta, int max_sweeps) {
  // With cutoff 0 a state outside the dirty set would reproduce its current
  // value exactly, so each pass equals a full Jacobi sweep of the whole table.
  if (model.state_count() != values_.size()) throw Error(Errc::InvalidArgument, "model does not match planner");
  int sweeps = 0;
  last_converged_ = false;
  while (sweeps < max_sweeps) {
    for (const std::uint32_t s : dirty_) scratch_[s] = backup(s, gamma);
    double delta = 0.0;
    for (const std::uint32_t s : dirty_) {
      const double updated = scratch_[s];
      if (updated == values_[s]) continue;
      const double change = std::abs(updated - values_[s]);
      delta = std::max(delta, change);
      held_[s] += change;
      if (held_[s] >= cutoff_) {
        held_[s] = 0.0;
        mark_predecessors(s);
      }
    }
    for (const std::uint32_t s : dirty_) {
      values_[s] = scratch_[s];
      dirty_flag_[s] = 0;
    }
    dirty_.swap(next_);
    next_.clear();
    dirty_flag_.swap(next_flag_);
    ++sweeps;
    if (delta < theta) {
      last_converged_ = true;
      break;
    }
  }
  return sweeps;
}

}  // namespace loca
