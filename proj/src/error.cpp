#include "parcoh/error.hpp"

namespace parcoh {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotAssociative: return "NotAssociative";
    case ErrorCode::NoIdentity: return "NoIdentity";
    case ErrorCode::NoInverse: return "NoInverse";
    case ErrorCode::UnknownFamily: return "UnknownFamily";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::ImproperIdeal: return "ImproperIdeal";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::NonIntegral: return "NonIntegral";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InternalMismatch: return "InternalMismatch";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NotACocycle: return "NotACocycle";
    case ErrorCode::Parse: return "ParseError";
  }
  return "Unknown";
}

ParseError::ParseError(std::string token, std::size_t position, const std::string& what)
    : Error(ErrorCode::Parse,
            what + " at position " + std::to_string(position) + " (token '" + token + "')"),
      token_(std::move(token)),
      position_(position) {}

}  // namespace parcoh
