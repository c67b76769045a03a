#include "loca/error.hpp"

namespace loca {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::UnsupportedInit: return "UnsupportedInit";
    case Errc::InvalidAction: return "InvalidAction";
    case Errc::SteppedTerminal: return "SteppedTerminal";
    case Errc::NotTabular: return "NotTabular";
    case Errc::InvalidPermutation: return "InvalidPermutation";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::OutOfBounds: return "OutOfBounds";
    case Errc::CalledMidEpisode: return "CalledMidEpisode";
    case Errc::EmptyCurve: return "EmptyCurve";
    case Errc::UndefinedBaseline: return "UndefinedBaseline";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::ParseError: return "ParseError";
    case Errc::ValidationError: return "ValidationError";
    case Errc::MissingBaseline: return "MissingBaseline";
    case Errc::IoError: return "IoError";
    case Errc::RunFailed: return "RunFailed";
  }
  return "Unknown";
}

}  // namespace loca
