#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "loca/mdp.hpp"

namespace loca {

std::vector<std::string> registered_environments();
bool is_registered_environment(std::string_view name);

/// "gridworld" or "mountaincar" for task A, B or ShuffledA (action indices
/// rotated by one: a -> (a + 1) mod |A|). With s_mult > 1 the tabular state
/// space is inflated by wrap_state_multiplier, drawing from `noise`.
std::unique_ptr<Environment> make_environment(std::string_view name, TaskLabel task, std::size_t s_mult, Rng noise);

/// The rotation used for ShuffledA. For Mountain Car: 0 -> no-op, 1 -> push right, 2 -> push left.
std::vector<Action> shuffled_action_permutation(std::size_t action_count);

}  // namespace loca
