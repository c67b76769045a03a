#include "loca/mdp.hpp"

#include "loca/error.hpp"

namespace loca {

std::string to_string(InitSpec init) {
  switch (init) {
    case InitSpec::FullTrain: return "FullTrain";
    case InitSpec::LocalT1: return "LocalT1";
    case InitSpec::EvalMid: return "EvalMid";
  }
  return "?";
}

std::string to_string(TaskLabel task) {
  switch (task) {
    case TaskLabel::A: return "A";
    case TaskLabel::B: return "B";
    case TaskLabel::ShuffledA: return "ShuffledA";
  }
  return "?";
}

std::size_t tabular_index(const StateRef& s) {
  if (const auto* t = std::get_if<TabularIndex>(&s)) return t->index;
  throw Error(Errc::NotTabular, "expected a tabular state");
}

ContinuousPoint continuous_point(const StateRef& s) {
  if (const auto* p = std::get_if<ContinuousPoint>(&s)) return *p;
  throw Error(Errc::OutOfBounds, "expected a continuous state");
}

}  // namespace loca
