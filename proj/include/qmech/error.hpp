#pragma once

#include <stdexcept>
#include <string>

namespace qmech {

/// Broad failure categories. The CLI maps validation-type kinds to exit
/// code 2 and numerical guards to exit code 3.
enum class ErrorKind {
  InvalidDimension,
  InvalidArgument,
  ContractViolation,
  TruncationRisk,
  NearResonance,
  DegenerateJunction,
  UnsupportedBasis,
  StepInstability,
  PositivityViolation,
  ProtocolInvalid,
  NonConvergence,
  Config,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// True for failures raised by a numerical guard rather than bad input.
  bool is_numerical_guard() const noexcept {
    switch (kind_) {
      case ErrorKind::TruncationRisk:
      case ErrorKind::NearResonance:
      case ErrorKind::DegenerateJunction:
      case ErrorKind::StepInstability:
      case ErrorKind::PositivityViolation:
      case ErrorKind::NonConvergence:
        return true;
      default:
        return false;
    }
  }

 private:
  ErrorKind kind_;
};

const char* to_string(ErrorKind kind) noexcept;

}  // namespace qmech
