#include "loca/environments.hpp"

#include <string>

#include "loca/error.hpp"
#include "loca/gridworld.hpp"
#include "loca/mountain_car.hpp"
#include "loca/wrappers.hpp"

namespace loca {

std::vector<std::string> registered_environments() { return {"gridworld", "mountaincar"}; }

bool is_registered_environment(std::string_view name) { return name == "gridworld" || name == "mountaincar"; }

std::vector<Action> shuffled_action_permutation(std::size_t action_count) {
  std::vector<Action> perm(action_count);
  for (std::size_t a = 0; a < action_count; ++a) perm[a] = (a + 1) % action_count;
  return perm;
}

std::unique_ptr<Environment> make_environment(std::string_view name, TaskLabel task, std::size_t s_mult, Rng noise) {
  const TaskLabel base_task = task == TaskLabel::ShuffledA ? TaskLabel::A : task;
  std::unique_ptr<Environment> env;
  if (name == "gridworld") {
    env = gridworld_new(base_task);
  } else if (name == "mountaincar") {
    env = mountaincar_new(base_task);
  } else {
    throw Error(Errc::ValidationError, "unknown environment '" + std::string(name) + "'");
  }
  if (task == TaskLabel::ShuffledA) {
    const std::size_t actions = env->descriptor().action_count;
    env = wrap_action_shuffle(std::move(env), shuffled_action_permutation(actions));
  }
  if (s_mult > 1) env = wrap_state_multiplier(std::move(env), s_mult, noise);
  return env;
}

}  // namespace loca
