#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace parcoh {

enum class ErrorCode {
  NotAssociative,
  NoIdentity,
  NoInverse,
  UnknownFamily,
  BadParams,
  ImproperIdeal,
  CapExceeded,
  NonIntegral,
  DimensionMismatch,
  InternalMismatch,
  TooLarge,
  NotACocycle,
  Parse,
};

const char* to_string(ErrorCode code) noexcept;

/// Domain error raised by every module. The code identifies the failure
/// class; the message names the witness (triple, element, token, ...).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Grammar error for group, ideal and coefficient specs.
class ParseError : public Error {
 public:
  ParseError(std::string token, std::size_t position, const std::string& what);

  const std::string& token() const noexcept { return token_; }
  std::size_t position() const noexcept { return position_; }

 private:
  std::string token_;
  std::size_t position_;
};

}  // namespace parcoh
