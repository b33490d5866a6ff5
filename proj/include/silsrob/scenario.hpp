#pragma once

// Scenario files: a flat `key = value` text format describing one motion.
// The grammar and the list of keys are documented in docs/scenario_format.md.

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "silsrob/platform.hpp"
#include "silsrob/spherical.hpp"
#include "silsrob/trajectory.hpp"

namespace silsrob {

/// Malformed input. `line` is 1-based, 0 when the problem is not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, std::string field, const std::string& what);
  int line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  int line_;
  std::string field_;
};

/// Well-formed input that violates a scenario invariant.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string field, const std::string& what);
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

struct InstrumentConfig {
  std::string name;  // "left" or "right"
  SphericalGeometry geometry;
  std::optional<Vec3> tip;                 // type 4: fixed-frame tip to hold
  std::optional<SphericalJoints> joints;   // type 2/3: start joints
  std::optional<SphericalJoints> target;   // type 3: target joints
  std::optional<double> insert_to;         // type 2: target q3
};

struct Scenario {
  MotionType motion = MotionType::Type4Reorient;
  PlatformPose start;
  std::vector<InstrumentConfig> instruments;
  double d_psi = 0.0;
  double d_theta = 0.0;
  ProfileLimits angular{10.0, 5.0};
  ProfileLimits linear{20.0, 10.0};
  double dt = 0.01;
  IkBranch branch = IkBranch::Principal;
  /// Endoscope insertion depth (mm), carried through to the output unchanged.
  std::optional<double> endoscope_insertion;
  std::optional<std::string> output;
};

Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);

/// Throws ValidationError naming the first violated invariant.
void validate_scenario(const Scenario& s);

std::optional<IkBranch> parse_branch(std::string_view name);
std::string_view to_string(IkBranch branch);

}  // namespace silsrob
