#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace radlyap {

inline constexpr std::string_view kVersion = "0.1.0";

enum class ErrorKind {
  InvalidArgument,
  NonConvergence,
  DegenerateAnnulus,
  ZeroCountMismatch,
  SingularPotential,
  StepFailure,
  AmbiguousZero,
  MembershipFailure,
  GluingFailure,
  MethodDisagreement,
  NoRootInRange,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::DegenerateAnnulus: return "DegenerateAnnulus";
    case ErrorKind::ZeroCountMismatch: return "ZeroCountMismatch";
    case ErrorKind::SingularPotential: return "SingularPotential";
    case ErrorKind::StepFailure: return "StepFailure";
    case ErrorKind::AmbiguousZero: return "AmbiguousZero";
    case ErrorKind::MembershipFailure: return "MembershipFailure";
    case ErrorKind::GluingFailure: return "GluingFailure";
    case ErrorKind::MethodDisagreement: return "MethodDisagreement";
    case ErrorKind::NoRootInRange: return "NoRootInRange";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so
/// callers (and the CLI) can react without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw Error(ErrorKind::InvalidArgument, message);
}

}  // namespace radlyap
