#pragma once

#include <memory>
#include <vector>

#include "loca/mdp.hpp"

namespace loca {

/// Inflates a tabular state space by a factor `m` with an irrelevant random
/// feature. Wrapped index = base * m + u, with u redrawn at every reset and
/// every step from a private stream, so the base trajectory is untouched.
class StateMultiplier final : public Environment {
 public:
  StateMultiplier(std::unique_ptr<Environment> base, std::size_t multiplier, Rng noise);

  const EnvDescriptor& descriptor() const override { return desc_; }
  StateRef reset(InitSpec init, Rng& rng) override;
  StepOutcome step(const StateRef& s, Action a, Rng& rng) override;
  std::unique_ptr<Environment> clone() const override;
  void reseed_noise(std::uint64_t seed) override;

  std::size_t multiplier() const { return m_; }
  const Environment& base() const { return *base_; }

 private:
  std::unique_ptr<Environment> base_;
  std::size_t m_;
  Rng noise_;
  EnvDescriptor desc_;
};

/// step(wrapped, s, a) == step(base, s, perm[a]).
class ActionShuffle final : public Environment {
 public:
  ActionShuffle(std::unique_ptr<Environment> base, std::vector<Action> perm);

  const EnvDescriptor& descriptor() const override { return desc_; }
  StateRef reset(InitSpec init, Rng& rng) override { return base_->reset(init, rng); }
  StepOutcome step(const StateRef& s, Action a, Rng& rng) override;
  std::unique_ptr<Environment> clone() const override;
  void reseed_noise(std::uint64_t seed) override { base_->reseed_noise(seed); }

  const std::vector<Action>& permutation() const { return perm_; }

 private:
  std::unique_ptr<Environment> base_;
  std::vector<Action> perm_;
  EnvDescriptor desc_;
};

std::unique_ptr<Environment> wrap_state_multiplier(std::unique_ptr<Environment> env, std::size_t m, Rng noise);
std::unique_ptr<Environment> wrap_action_shuffle(std::unique_ptr<Environment> env, std::vector<Action> perm);

/// Inverse of a permutation; throws InvalidPermutation for non-bijections.
std::vector<Action> invert_permutation(const std::vector<Action>& perm);

}  // namespace loca
