#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nel {

enum class ErrorKind {
  StepLimitExceeded,
  NonFiniteState,
  TailNotAsymptotic,
  BundleMismatch,
  Underflow,
  Undecidable,
  BracketFailure,
  DomainViolation,
  RootNotBracketed,
  ParityMismatch,
  QuadratureFailure,
  IllConditioned,
  MatchDiverged,
  Undecided,
  InsufficientExtrema,
  NoConvergence,
  InvalidArgument,
  UsageError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a machine-readable kind so
/// the CLI can report it as JSON.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(ErrorKind::InvalidArgument, what);
}

}  // namespace nel
