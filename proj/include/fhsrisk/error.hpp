#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fhsrisk {

enum class ErrorCode {
  // market data
  MissingColumn,
  UnparsableDate,
  UnparsablePrice,
  NonPositivePrice,
  DuplicateDate,
  TooShort,
  NoOverlap,
  Io,
  // numerics
  DomainError,
  MaxDepthExceeded,
  NoSignChange,
  NonFiniteObjective,
  // distributions and models
  ShapeOutOfDomain,
  ProbabilityOutOfDomain,
  InvalidParameters,
  NonPositiveVariance,
  // diagnostics
  ZeroVariance,
  SingularRegression,
  LengthMismatch,
  // simulation and risk
  EmptyPool,
  EmptyResiduals,
  TooFewTrials,
  MissingLevel,
  InvalidSpec,
  InvalidConfig,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI exit-code mapping) can branch without string matching.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

} // namespace fhsrisk
