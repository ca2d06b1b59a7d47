#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pmd {

enum class ErrorKind {
  Parse,
  DuplicatePoint,
  DimensionMismatch,
  SizeMismatch,
  IndexOutOfRange,
  EmptySubset,
  NotIsometric,
  NegativeDelta,
  AmbientMismatch,
  InvalidMapping,
  InternalInvariantViolation,
  NegativeDeficiency,
  NotInjectiveDecomposable,
  NotAMatching,
  InconsistentParts,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::DuplicatePoint: return "DuplicatePoint";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::SizeMismatch: return "SizeMismatch";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::EmptySubset: return "EmptySubset";
    case ErrorKind::NotIsometric: return "NotIsometric";
    case ErrorKind::NegativeDelta: return "NegativeDelta";
    case ErrorKind::AmbientMismatch: return "AmbientMismatch";
    case ErrorKind::InvalidMapping: return "InvalidMapping";
    case ErrorKind::InternalInvariantViolation: return "InternalInvariantViolation";
    case ErrorKind::NegativeDeficiency: return "NegativeDeficiency";
    case ErrorKind::NotInjectiveDecomposable: return "NotInjectiveDecomposable";
    case ErrorKind::NotAMatching: return "NotAMatching";
    case ErrorKind::InconsistentParts: return "InconsistentParts";
  }
  return "Unknown";
}

/// Exception type for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        message_(message) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// The message without the kind prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorKind kind_;
  std::string message_;
};

}  // namespace pmd
