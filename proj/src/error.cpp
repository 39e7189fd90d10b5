#include "affect_rec/error.hpp"

namespace affect {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::ZeroVector: return "ZeroVector";
    case Errc::NegativeEmotion: return "NegativeEmotion";
    case Errc::EmptyList: return "EmptyList";
    case Errc::FileNotFound: return "FileNotFound";
    case Errc::ParseError: return "ParseError";
    case Errc::DuplicateRating: return "DuplicateRating";
    case Errc::EmptyJoin: return "EmptyJoin";
    case Errc::MissingVoteCount: return "MissingVoteCount";
    case Errc::UnknownUser: return "UnknownUser";
    case Errc::UnknownItem: return "UnknownItem";
    case Errc::EmptyTarget: return "EmptyTarget";
    case Errc::InsufficientUsers: return "InsufficientUsers";
    case Errc::NotAMember: return "NotAMember";
    case Errc::EmptyGroup: return "EmptyGroup";
    case Errc::GroupTooSmall: return "GroupTooSmall";
    case Errc::NotOwner: return "NotOwner";
    case Errc::UnknownGroup: return "UnknownGroup";
    case Errc::AlreadyMember: return "AlreadyMember";
    case Errc::EmptyCandidates: return "EmptyCandidates";
    case Errc::EmptySlice: return "EmptySlice";
    case Errc::InsufficientRaters: return "InsufficientRaters";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& detail)
    : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code) {}

Error Error::parse(std::size_t line, const std::string& detail) {
  Error e(Errc::ParseError, "line " + std::to_string(line) + ": " + detail);
  e.line_ = line;
  return e;
}

}  // namespace affect
