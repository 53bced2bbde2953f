#include "nel/error.hpp"

namespace nel {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::StepLimitExceeded: return "StepLimitExceeded";
    case ErrorKind::NonFiniteState: return "NonFiniteState";
    case ErrorKind::TailNotAsymptotic: return "TailNotAsymptotic";
    case ErrorKind::BundleMismatch: return "BundleMismatch";
    case ErrorKind::Underflow: return "Underflow";
    case ErrorKind::Undecidable: return "Undecidable";
    case ErrorKind::BracketFailure: return "BracketFailure";
    case ErrorKind::DomainViolation: return "DomainViolation";
    case ErrorKind::RootNotBracketed: return "RootNotBracketed";
    case ErrorKind::ParityMismatch: return "ParityMismatch";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::MatchDiverged: return "MatchDiverged";
    case ErrorKind::Undecided: return "Undecided";
    case ErrorKind::InsufficientExtrema: return "InsufficientExtrema";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::UsageError: return "UsageError";
  }
  return "Unknown";
}

}  // namespace nel
