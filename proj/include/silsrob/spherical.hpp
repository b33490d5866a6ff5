#pragma once

// Kinematics of one spherical RCM instrument module.
//
// The module chain, expressed in the platform frame at the module's port, is
//
//   M = Ry(alpha) * Rx(q1) * Ry(q2) * Rx(beta) * Tz(-q3)
//
// so every tip position lies on a sphere of radius q3 about the port.

#include "silsrob/platform.hpp"
#include "silsrob/transforms.hpp"

namespace silsrob {

/// Fixed geometry of one module. Angles in degrees, lengths in mm.
struct SphericalGeometry {
  double alpha = 10.0;
  double beta = 10.0;
  /// Mechanism sphere radius. Metadata only; it does not enter the chain.
  double radius = 110.0;
  RcmPort port = RcmPort::left();
  double q1_min = -90.0;
  double q1_max = 90.0;
  double q2_min = -90.0;
  double q2_max = 90.0;
  double q3_min = 0.0;
  double q3_max = 300.0;

  static SphericalGeometry left_default() { return {}; }
  static SphericalGeometry right_default() { return left_default().mirrored(); }

  /// Geometry reflected through the platform Y'Z' plane: alpha and the port x
  /// offset change sign, and the q2 travel is negated.
  SphericalGeometry mirrored() const;

  friend bool operator==(const SphericalGeometry&, const SphericalGeometry&) = default;
};

struct SphericalJoints {
  double q1 = 0.0;  // deg
  double q2 = 0.0;  // deg
  double q3 = 0.0;  // mm, insertion depth

  /// Joints that place the mirrored module's tip at the mirror image.
  SphericalJoints mirrored() const { return {q1, -q2, q3}; }

  friend bool operator==(const SphericalJoints&, const SphericalJoints&) = default;
};

/// Which of the two arcsine solutions for q2 is taken. Principal keeps
/// q2 in [-90, 90] deg.
enum class IkBranch { Principal, Mirror };

/// Throws std::invalid_argument naming the violated field.
void check_geometry(const SphericalGeometry& g);

/// Throws KinematicsError(JointLimit) if a joint leaves its travel.
void check_joints(const SphericalJoints& j, const SphericalGeometry& g);

Mat4 module_matrix(const SphericalJoints& j, const SphericalGeometry& g);

/// Tip (X_L, Y_L, Z_L) relative to the port, in platform axes.
Vec3 tip_in_platform(const SphericalJoints& j, const SphericalGeometry& g);

/// Tip in the fixed frame, evaluated from the expanded closed form.
Vec3 fk_tip_fixed(const PlatformPose& pose, const SphericalJoints& j, const SphericalGeometry& g);

/// Tip in the fixed frame, evaluated as last_column(M_P * RCM * M).
Vec3 fk_tip_fixed_chain(const PlatformPose& pose, const SphericalJoints& j,
                        const SphericalGeometry& g);

/// Joints placing the tip at v (platform axes, relative to the port).
SphericalJoints ik_tip_platform(const Vec3& v, const SphericalGeometry& g,
                                IkBranch branch = IkBranch::Principal);

/// Joints placing the tip at a fixed-frame point for the given platform pose.
SphericalJoints ik_full(const PlatformPose& pose, const Vec3& tip_fixed, const SphericalGeometry& g,
                        IkBranch branch = IkBranch::Principal);

/// Branch that a joint set belongs to.
IkBranch branch_of(const SphericalJoints& j);

}  // namespace silsrob
