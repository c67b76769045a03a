#pragma once

#include <span>

#include "loca/mdp.hpp"
#include "loca/rng.hpp"

namespace loca {

/// With probability epsilon a uniform action, otherwise a uniform draw from
/// the argmax set. No draw is made for the exploration coin when epsilon is 0.
Action eps_greedy_action(std::span<const double> qvalues, double epsilon, Rng& rng);

}  // namespace loca
