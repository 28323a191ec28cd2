#include "maslovp/error.hpp"

namespace maslovp {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NotOrthogonal: return "NotOrthogonal";
    case ErrorKind::NotSymplectic: return "NotSymplectic";
    case ErrorKind::LogFailed: return "LogFailed";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::AccuracyNotReached: return "AccuracyNotReached";
    case ErrorKind::QuadratureNotConverged: return "QuadratureNotConverged";
    case ErrorKind::NotConverged: return "NotConverged";
    case ErrorKind::NullityMismatch: return "NullityMismatch";
    case ErrorKind::IdentityViolated: return "IdentityViolated";
    case ErrorKind::ShiftInvalid: return "ShiftInvalid";
    case ErrorKind::Mismatch: return "Mismatch";
    case ErrorKind::OffsetNotConstant: return "OffsetNotConstant";
    case ErrorKind::OrderingViolated: return "OrderingViolated";
    case ErrorKind::UnresolvedCrossing: return "UnresolvedCrossing";
    case ErrorKind::TheoremMismatch: return "TheoremMismatch";
    case ErrorKind::Inconsistent: return "Inconsistent";
    case ErrorKind::BlowUp: return "BlowUp";
    case ErrorKind::EquivarianceBroken: return "EquivarianceBroken";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace maslovp
