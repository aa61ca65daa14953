#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sis {

enum class ErrorCode {
  NonPositive,
  NegativeSigma,
  InitialOutOfRange,
  ComplexRoot,
  SigmaZero,
  OutOfRange,
  AssumptionViolated,
  OutOfDomain,
  NoSignChange,
  DriftOrderViolated,
  NonPositiveState,
  BadBand,
  WindowTooShort,
  NumericalAssertion,
  ConfigError,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above, so
/// callers (and the CLI exit-code mapping) can branch without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sis
