#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace spiga {

enum class ErrorKind {
  NonIncreasingKnots,
  NotOpen,
  MultiplicityOutOfRange,
  InvalidDegree,
  OutOfDomain,
  IndexOutOfRange,
  DerivativeOrderTooHigh,
  InvalidParameter,
  DataAssumptionViolated,
  DegenerateLayerKnots,
  QuadratureOrderTooLow,
  SingularMatrix,
  ZeroExactSolution,
  OracleGateFailed,
  ConfigParseError,
  IoError,
};

inline std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonIncreasingKnots: return "NonIncreasingKnots";
    case ErrorKind::NotOpen: return "NotOpen";
    case ErrorKind::MultiplicityOutOfRange: return "MultiplicityOutOfRange";
    case ErrorKind::InvalidDegree: return "InvalidDegree";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::DerivativeOrderTooHigh: return "DerivativeOrderTooHigh";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::DataAssumptionViolated: return "DataAssumptionViolated";
    case ErrorKind::DegenerateLayerKnots: return "DegenerateLayerKnots";
    case ErrorKind::QuadratureOrderTooLow: return "QuadratureOrderTooLow";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::ZeroExactSolution: return "ZeroExactSolution";
    case ErrorKind::OracleGateFailed: return "OracleGateFailed";
    case ErrorKind::ConfigParseError: return "ConfigParseError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so that
/// sweep drivers can record it per cell instead of aborting.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace spiga
