#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace ppg {

enum class ErrorKind {
  MismatchedGroup,
  StabilizationFailure,
  ZeroElement,
  SearchSpaceTooLarge,
  ScopeTooLarge,
  EmbeddingUnavailable,
  NotPure,
  NotAPureIso,
  UlmMismatch,
  Unsupported,
  ParseError,
  MixedPrimeError,
  ArityError,
  InvalidArgument,
  Overflow,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::MismatchedGroup: return "MismatchedGroup";
    case ErrorKind::StabilizationFailure: return "StabilizationFailure";
    case ErrorKind::ZeroElement: return "ZeroElement";
    case ErrorKind::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case ErrorKind::ScopeTooLarge: return "ScopeTooLarge";
    case ErrorKind::EmbeddingUnavailable: return "EmbeddingUnavailable";
    case ErrorKind::NotPure: return "NotPure";
    case ErrorKind::NotAPureIso: return "NotAPureIso";
    case ErrorKind::UlmMismatch: return "UlmMismatch";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::MixedPrimeError: return "MixedPrimeError";
    case ErrorKind::ArityError: return "ArityError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Overflow: return "Overflow";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Scope-exhaustion errors are the ones the CLI maps to exit code 3.
inline bool is_scope_error(ErrorKind k) {
  return k == ErrorKind::ScopeTooLarge || k == ErrorKind::SearchSpaceTooLarge ||
         k == ErrorKind::Overflow;
}

/// Enumeration cap; PPG_SCOPE_CAP in the environment overrides the default.
inline std::uint64_t scope_cap(std::uint64_t fallback) {
  if (const char* env = std::getenv("PPG_SCOPE_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return fallback;
}

}  // namespace ppg
