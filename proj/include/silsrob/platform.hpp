#pragma once

// Mobile platform pose (the interface to the 6-DOF parallel robot) and the
// instrument entry ports it carries.

#include "silsrob/transforms.hpp"

namespace silsrob {

/// Clearance from theta = +-90 deg required of every platform pose.
inline constexpr double kGimbalMarginDeg = 1e-3;

/// Pose of the platform point P (the endoscope RCM) in the fixed frame.
/// Lengths in mm, angles in degrees.
struct PlatformPose {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double psi = 0.0;
  double theta = 0.0;
  double phi = 0.0;

  Vec3 position() const { return {x, y, z}; }

  friend bool operator==(const PlatformPose&, const PlatformPose&) = default;
};

enum class PortSide { Left, Right, Endoscope };

/// Fixed entry port in the platform frame O'X'Y'Z' (mm).
class RcmPort {
 public:
  static RcmPort endoscope() { return RcmPort({}, PortSide::Endoscope); }
  static RcmPort left(double half_spacing = 10.0) {
    return RcmPort({-half_spacing, 0.0, 0.0}, PortSide::Left);
  }
  static RcmPort right(double half_spacing = 10.0) {
    return RcmPort({half_spacing, 0.0, 0.0}, PortSide::Right);
  }
  /// Throws std::invalid_argument for an endoscope port away from the origin.
  static RcmPort custom(const Vec3& offset, PortSide side);

  const Vec3& offset() const { return offset_; }
  PortSide side() const { return side_; }

  /// Reflection through the platform Y'Z' plane; Left and Right swap.
  RcmPort mirrored() const;

  friend bool operator==(const RcmPort&, const RcmPort&) = default;

 private:
  RcmPort(const Vec3& offset, PortSide side) : offset_(offset), side_(side) {}

  Vec3 offset_;
  PortSide side_;
};

/// Throws KinematicsError: DegenerateInput for non-finite values,
/// GimbalProximity when |theta| >= 90 - kGimbalMarginDeg.
void check_pose(const PlatformPose& pose);

Mat3 platform_rotation(const PlatformPose& pose);

/// M_P: rotation euler_xyz(psi, theta, phi), translation (X_P, Y_P, Z_P).
Mat4 platform_matrix(const PlatformPose& pose);

/// Port position in the fixed frame, M_P * RCM.
Vec3 rcm_fixed(const PlatformPose& pose, const RcmPort& port);

}  // namespace silsrob
