#include "loca/wrappers.hpp"

#include <string>

#include "loca/error.hpp"

namespace loca {

StateMultiplier::StateMultiplier(std::unique_ptr<Environment> base, std::size_t multiplier, Rng noise)
    : base_(std::move(base)), m_(multiplier), noise_(noise) {
  if (!base_->descriptor().tabular()) throw Error(Errc::NotTabular, "state multiplier needs a tabular environment");
  if (m_ < 1) throw Error(Errc::InvalidArgument, "state multiplier must be >= 1");
  desc_ = base_->descriptor();
  desc_.state_count *= m_;
  if (m_ > 1) desc_.name += "*" + std::to_string(m_);
}

StateRef StateMultiplier::reset(InitSpec init, Rng& rng) {
  const std::size_t base = tabular_index(base_->reset(init, rng));
  return TabularIndex{base * m_ + noise_.below(m_)};
}

StepOutcome StateMultiplier::step(const StateRef& s, Action a, Rng& rng) {
  const std::size_t wrapped = tabular_index(s);
  if (wrapped >= desc_.state_count) throw Error(Errc::SteppedTerminal, "stepped from an absorbing state");
  StepOutcome out = base_->step(TabularIndex{wrapped / m_}, a, rng);
  if (out.terminal) {
    out.next = TabularIndex{desc_.terminal_index(*out.terminal)};
  } else {
    out.next = TabularIndex{tabular_index(out.next) * m_ + noise_.below(m_)};
  }
  return out;
}

std::unique_ptr<Environment> StateMultiplier::clone() const {
  return std::make_unique<StateMultiplier>(base_->clone(), m_, noise_);
}

void StateMultiplier::reseed_noise(std::uint64_t seed) {
  noise_ = Rng(seed);
  base_->reseed_noise(mix64(seed));
}

std::vector<Action> invert_permutation(const std::vector<Action>& perm) {
  std::vector<Action> inv(perm.size(), perm.size());
  for (std::size_t a = 0; a < perm.size(); ++a) {
    if (perm[a] >= perm.size() || inv[perm[a]] != perm.size())
      throw Error(Errc::InvalidPermutation, "not a bijection on the action indices");
    inv[perm[a]] = a;
  }
  return inv;
}

ActionShuffle::ActionShuffle(std::unique_ptr<Environment> base, std::vector<Action> perm)
    : base_(std::move(base)), perm_(std::move(perm)) {
  desc_ = base_->descriptor();
  if (perm_.size() != desc_.action_count)
    throw Error(Errc::InvalidPermutation, "permutation size " + std::to_string(perm_.size()) +
                                              " does not match " + std::to_string(desc_.action_count) + " actions");
  invert_permutation(perm_);
  if (desc_.task == TaskLabel::A) desc_.task = TaskLabel::ShuffledA;
}

StepOutcome ActionShuffle::step(const StateRef& s, Action a, Rng& rng) {
  if (a >= perm_.size()) throw Error(Errc::InvalidAction, "action " + std::to_string(a) + " out of range");
  return base_->step(s, perm_[a], rng);
}

std::unique_ptr<Environment> ActionShuffle::clone() const {
  return std::make_unique<ActionShuffle>(base_->clone(), perm_);
}

std::unique_ptr<Environment> wrap_state_multiplier(std::unique_ptr<Environment> env, std::size_t m, Rng noise) {
  return std::make_unique<StateMultiplier>(std::move(env), m, noise);
}

std::unique_ptr<Environment> wrap_action_shuffle(std::unique_ptr<Environment> env, std::vector<Action> perm) {
  return std::make_unique<ActionShuffle>(std::move(env), std::move(perm));
}

}  // namespace loca
