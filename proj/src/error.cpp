#include "fhsrisk/error.hpp"

namespace fhsrisk {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
  case ErrorCode::MissingColumn: return "MissingColumn";
  case ErrorCode::UnparsableDate: return "UnparsableDate";
  case ErrorCode::UnparsablePrice: return "UnparsablePrice";
  case ErrorCode::NonPositivePrice: return "NonPositivePrice";
  case ErrorCode::DuplicateDate: return "DuplicateDate";
  case ErrorCode::TooShort: return "TooShort";
  case ErrorCode::NoOverlap: return "NoOverlap";
  case ErrorCode::Io: return "Io";
  case ErrorCode::DomainError: return "DomainError";
  case ErrorCode::MaxDepthExceeded: return "MaxDepthExceeded";
  case ErrorCode::NoSignChange: return "NoSignChange";
  case ErrorCode::NonFiniteObjective: return "NonFiniteObjective";
  case ErrorCode::ShapeOutOfDomain: return "ShapeOutOfDomain";
  case ErrorCode::ProbabilityOutOfDomain: return "ProbabilityOutOfDomain";
  case ErrorCode::InvalidParameters: return "InvalidParameters";
  case ErrorCode::NonPositiveVariance: return "NonPositiveVariance";
  case ErrorCode::ZeroVariance: return "ZeroVariance";
  case ErrorCode::SingularRegression: return "SingularRegression";
  case ErrorCode::LengthMismatch: return "LengthMismatch";
  case ErrorCode::EmptyPool: return "EmptyPool";
  case ErrorCode::EmptyResiduals: return "EmptyResiduals";
  case ErrorCode::TooFewTrials: return "TooFewTrials";
  case ErrorCode::MissingLevel: return "MissingLevel";
  case ErrorCode::InvalidSpec: return "InvalidSpec";
  case ErrorCode::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

} // namespace fhsrisk
