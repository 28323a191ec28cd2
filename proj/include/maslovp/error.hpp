#pragma once

#include <stdexcept>
#include <string>

namespace maslovp {

enum class ErrorKind {
  InvalidArgument,
  NotOrthogonal,
  NotSymplectic,
  LogFailed,
  NotSymmetric,
  NoConvergence,
  Overflow,
  PreconditionViolated,
  AccuracyNotReached,
  QuadratureNotConverged,
  NotConverged,
  NullityMismatch,
  IdentityViolated,
  ShiftInvalid,
  Mismatch,
  OffsetNotConstant,
  OrderingViolated,
  UnresolvedCrossing,
  TheoremMismatch,
  Inconsistent,
  BlowUp,
  EquivarianceBroken,
  ParseError,
};

const char* to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so
/// callers (and the CLI) can dispatch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace maslovp
