#pragma once

#include <span>
#include <vector>

#include "loca/execution.hpp"
#include "loca/tabular_model.hpp"

namespace loca {

/// State values over the non-terminal states. Terminal outcomes are worth 0
/// and are never stored.
using ValueTable = std::vector<double>;

/// r(s,a) + discount * sum_z p(z|s,a) v(z), terminal z contributing 0.
double action_value(const TabularModel& model, std::span<const double> v, std::size_t s, Action a, double discount);

/// Q(a) for every action at s, with the horizon discount gamma^n.
std::vector<double> q_from_model(const TabularModel& model, std::span<const double> v, std::size_t s, double gamma,
                                 int n = 1);

double greedy_backup(const TabularModel& model, std::span<const double> v, std::size_t s, double gamma);

/// One synchronous (Jacobi) Bellman optimality sweep: out = T(in).
/// Returns max_s |out(s) - in(s)|.
double bellman_sweep_serial(const TabularModel& model, double gamma, std::span<const double> in,
                            std::span<double> out);
/// OpenMP version of bellman_sweep_serial; every state is computed by the
/// same expression so the result is bit-identical.
double bellman_sweep_parallel(const TabularModel& model, double gamma, std::span<const double> in,
                              std::span<double> out);

struct ValueIterationResult {
  ValueTable values;
  int sweeps = 0;
  bool converged = false;
  /// Max absolute change of every sweep, in order.
  std::vector<double> deltas;
};

/// Sweeps until the max change drops below theta or max_sweeps is reached
/// (converged == false in that case; the table is still returned).
ValueIterationResult value_iteration(const TabularModel& model, double gamma, double theta, int max_sweeps,
                                     ValueTable initial = {}, Execution exec = Execution::Serial);

/// Warm-started value iteration that only recomputes states whose backup can
/// have changed since the previous sweep.
///
/// With cutoff 0 it produces exactly the same tables as repeated full Jacobi
/// sweeps from the same starting table. A positive cutoff lets a state hold
/// back its value changes until their accumulated magnitude reaches the
/// cutoff, so every state's backup is stale by less than gamma * cutoff.
class IncrementalPlanner {
 public:
  IncrementalPlanner(const TabularModel& model, ValueTable initial, double cutoff = 0.0);

  const ValueTable& values() const { return values_; }

  /// Must be called for every row change before the next plan().
  void notify_row_changed(const TabularModel& model, std::size_t s, Action a);

  /// Runs sweeps to tolerance; returns the number of sweeps performed.
  int plan(const TabularModel& model, double gamma, double theta, int max_sweeps);

  bool last_converged() const { return last_converged_; }

 private:
  void mark_predecessors(std::size_t state);
  void repack(const TabularModel& model, std::size_t s);
  double backup(std::size_t s, double gamma) const;

  // Contiguous copy of each state's rows with terminal outcomes dropped.
  struct PackedRows {
    std::vector<std::uint32_t> outcome;
    std::vector<double> probability;
    std::vector<std::uint32_t> start;  // action_count + 1 offsets
    std::vector<double> reward;
  };

  ValueTable values_;
  ValueTable scratch_;
  // Sum of |change| not yet pushed to predecessors.
  ValueTable held_;
  double cutoff_;
  std::vector<PackedRows> packed_;
  // predecessors_[z] lists states s with some p(z|s,.) > 0.
  std::vector<std::vector<std::uint32_t>> predecessors_;
  std::vector<std::size_t> known_row_size_;
  std::vector<char> dirty_flag_;
  std::vector<std::uint32_t> dirty_;
  std::vector<char> next_flag_;
  std::vector<std::uint32_t> next_;
  bool last_converged_ = true;
};

}  // namespace loca
