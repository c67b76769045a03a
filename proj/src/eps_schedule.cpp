#include "loca/eps_schedule.hpp"

#include <algorithm>
#include <cmath>

namespace loca {

double eps_at(const EpsSchedule& schedule, Stage stage, std::size_t step_in_phase) {
  switch (stage) {
    case Stage::Evaluation:
      return 0.0;
    case Stage::Phase1:
      if (schedule.decay_phase1) {
        // start * d^step with d chosen so that step == length lands on phase1_end.
        const double length = static_cast<double>(std::max<std::size_t>(schedule.phase1_length, 1));
        const double ratio = schedule.phase1_end / schedule.phase1_start;
        const double t = std::min(static_cast<double>(step_in_phase), length);
        return schedule.phase1_start * std::pow(ratio, t / length);
      }
      return schedule.later;
    case Stage::Phase2:
    case Stage::Phase3:
      return schedule.later;
  }
  return schedule.later;
}

}  // namespace loca
