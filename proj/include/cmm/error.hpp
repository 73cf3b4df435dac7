#pragma once

#include <stdexcept>
#include <string>

namespace cmm {

enum class ErrorKind {
  ZeroVector,
  OutOfChart,
  DegenerateTriangle,
  LocationFailure,
  RefinementTooDeep,
  NonTangentDirection,
  InsufficientData,
  InvalidArgument,
  NumericalFailure,
  Config,
  Io,
};

const char* to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so callers (the CLI in
/// particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::OutOfChart: return "OutOfChart";
    case ErrorKind::DegenerateTriangle: return "DegenerateTriangle";
    case ErrorKind::LocationFailure: return "LocationFailure";
    case ErrorKind::RefinementTooDeep: return "RefinementTooDeep";
    case ErrorKind::NonTangentDirection: return "NonTangentDirection";
    case ErrorKind::InsufficientData: return "InsufficientData";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NumericalFailure: return "NumericalFailure";
    case ErrorKind::Config: return "ConfigError";
    case ErrorKind::Io: return "IoError";
  }
  return "Error";
}

}  // namespace cmm
