#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qfib {

/// Machine-readable failure categories. Names are stable: the CLI reports them verbatim.
enum class ErrorCode {
  NegativeMu,
  NonIntegerExponentExact,
  SixParamMismatch,
  InvalidParameter,
  UnsupportedKind,
  PreconditionViolated,
  DegenerateWindow,
  AllWindowsDegenerate,
  InsufficientData,
  DegeneratePhiWindow,
  ZeroEnergy,
  GaugeDomainError,
  UnsolvableConstraint,
  GridTooLarge,
};

std::string_view error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const { return error_name(code_); }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace qfib
