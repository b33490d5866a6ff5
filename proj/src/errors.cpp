#include "silsrob/errors.hpp"

#include <fmt/format.h>

namespace silsrob {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::GimbalProximity:
      return "GimbalProximity";
    case ErrorKind::JointLimit:
      return "JointLimit";
    case ErrorKind::Unreachable:
      return "Unreachable";
    case ErrorKind::DegenerateInput:
      return "DegenerateInput";
    case ErrorKind::SingularConfiguration:
      return "SingularConfiguration";
    case ErrorKind::InvalidLimits:
      return "InvalidLimits";
    case ErrorKind::OutOfRange:
      return "OutOfRange";
  }
  return "Unknown";
}

KinematicsError::KinematicsError(ErrorKind kind, const std::string& what)
    : std::runtime_error(what), kind_(kind) {}

KinematicsError KinematicsError::at_time(double t) const {
  if (sample_time_) return *this;
  KinematicsError e(kind_, fmt::format("{} (at t = {:.6f} s)", what(), t));
  e.sample_time_ = t;
  return e;
}

}  // namespace silsrob
