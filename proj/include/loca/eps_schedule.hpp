#pragma once

#include <cstddef>

namespace loca {

enum class Stage { Phase1, Phase2, Phase3, Evaluation };

/// Exploration rate per protocol stage. With `decay_phase1` the first phase
/// decays exponentially from phase1_start to phase1_end over phase1_length
/// steps; otherwise phase 1 uses `later` as well. Evaluation is always greedy.
struct EpsSchedule {
  double phase1_start = 1.0;
  double phase1_end = 0.01;
  std::size_t phase1_length = 200000;
  double later = 0.1;
  bool decay_phase1 = true;

  static EpsSchedule constant(double epsilon) { return {epsilon, epsilon, 1, epsilon, false}; }
};

double eps_at(const EpsSchedule& schedule, Stage stage, std::size_t step_in_phase);

}  // namespace loca
