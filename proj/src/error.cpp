#include "qfib/error.hpp"

namespace qfib {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NegativeMu: return "NegativeMu";
    case ErrorCode::NonIntegerExponentExact: return "NonIntegerExponentExact";
    case ErrorCode::SixParamMismatch: return "SixParamMismatch";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::UnsupportedKind: return "UnsupportedKind";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::DegenerateWindow: return "DegenerateWindow";
    case ErrorCode::AllWindowsDegenerate: return "AllWindowsDegenerate";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::DegeneratePhiWindow: return "DegeneratePhiWindow";
    case ErrorCode::ZeroEnergy: return "ZeroEnergy";
    case ErrorCode::GaugeDomainError: return "GaugeDomainError";
    case ErrorCode::UnsolvableConstraint: return "UnsolvableConstraint";
    case ErrorCode::GridTooLarge: return "GridTooLarge";
  }
  return "Unknown";
}

}  // namespace qfib
