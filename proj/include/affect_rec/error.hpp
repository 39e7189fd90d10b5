#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace affect {

/// Named failure kinds. The CLI prints `error: <name>` using errc_name().
enum class Errc {
  InvalidArgument,
  ZeroVector,
  NegativeEmotion,
  EmptyList,
  FileNotFound,
  ParseError,
  DuplicateRating,
  EmptyJoin,
  MissingVoteCount,
  UnknownUser,
  UnknownItem,
  EmptyTarget,
  InsufficientUsers,
  NotAMember,
  EmptyGroup,
  GroupTooSmall,
  NotOwner,
  UnknownGroup,
  AlreadyMember,
  EmptyCandidates,
  EmptySlice,
  InsufficientRaters,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail);

  /// ParseError carrying the 1-based line number of the offending row.
  static Error parse(std::size_t line, const std::string& detail);

  Errc code() const noexcept { return code_; }
  std::string_view name() const noexcept { return errc_name(code_); }
  std::size_t line() const noexcept { return line_; }

 private:
  Errc code_;
  std::size_t line_ = 0;
};

}  // namespace affect
