#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace silsrob {

enum class ErrorKind {
  GimbalProximity,
  JointLimit,
  Unreachable,
  DegenerateInput,
  SingularConfiguration,
  InvalidLimits,
  OutOfRange,
};

std::string_view to_string(ErrorKind kind);

/// Failure raised by the kinematic and planning routines. Planners attach the
/// time of the sample that failed.
class KinematicsError : public std::runtime_error {
 public:
  KinematicsError(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<double> sample_time() const noexcept { return sample_time_; }

  /// Copy of this error tagged with a plan sample time.
  KinematicsError at_time(double t) const;

 private:
  ErrorKind kind_;
  std::optional<double> sample_time_;
};

}  // namespace silsrob
