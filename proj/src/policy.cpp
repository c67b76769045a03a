#include "loca/policy.hpp"

#include <array>
#include <vector>

#include "loca/error.hpp"

namespace loca {

Action eps_greedy_action(std::span<const double> qvalues, double epsilon, Rng& rng) {
  const std::size_t n = qvalues.size();
  if (n == 0) throw Error(Errc::InvalidArgument, "no action values");
  if (epsilon > 0.0 && rng.uniform() < epsilon) return rng.below(n);

  double best = qvalues[0];
  for (std::size_t a = 1; a < n; ++a) best = std::max(best, qvalues[a]);
  // Small action sets are the norm; avoid a heap allocation for them.
  std::array<Action, 16> small{};
  std::vector<Action> large;
  std::size_t count = 0;
  for (std::size_t a = 0; a < n; ++a) {
    if (qvalues[a] != best) continue;
    if (n <= small.size()) {
      small[count] = a;
    } else {
      large.push_back(a);
    }
    ++count;
  }
  if (count == 1) return n <= small.size() ? small[0] : large[0];
  const auto pick = rng.below(count);
  return n <= small.size() ? small[pick] : large[pick];
}

}  // namespace loca
